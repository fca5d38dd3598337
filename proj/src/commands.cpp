#include "binreg/commands.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "binreg/csv.hpp"
#include "binreg/error.hpp"

namespace binreg {

using nlohmann::ordered_json;

namespace {

class TextTable {
 public:
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::string out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// One printed row of a coefficient table: a term, or a reference level
// (no column).
struct TermRow {
  std::string variable;
  std::string label;
  std::optional<std::size_t> column;
};

std::vector<TermRow> term_rows(const std::vector<std::string>& labels,
                               const std::vector<VariableSpec>& specs) {
  auto find = [&](const std::string& l) -> std::optional<std::size_t> {
    const auto it = std::ranges::find(labels, l);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<TermRow> rows;
  rows.push_back({kInterceptLabel, "", find(kInterceptLabel)});
  for (const auto& spec : specs) {
    bool first = true;
    for (const auto& level : spec.levels) {
      if (level == spec.reference) continue;
      rows.push_back({first ? spec.name : "", level, find(column_label(spec.name, level))});
      first = false;
    }
    rows.push_back({first ? spec.name : "", spec.reference + "(ref)", std::nullopt});
  }
  return rows;
}

std::string full(double v) { return fmt::format("{}", v); }

ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json coefficients_json(const FitResult& r) {
  ordered_json arr = ordered_json::array();
  for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
    arr.push_back({{"term", r.labels[j]},
                   {"estimate", number_or_null(r.coefficients[j])},
                   {"se", number_or_null(r.std_errors[j])},
                   {"z", number_or_null(r.z_values[j])},
                   {"p", number_or_null(r.p_values[j])},
                   {"stars", r.stars[j]}});
  }
  return arr;
}

ordered_json fit_json(const FitResult& r) {
  return {{"link", std::string(to_string(r.link))},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"log_likelihood", number_or_null(r.log_likelihood)},
          {"deviance", number_or_null(r.deviance)},
          {"aic", number_or_null(r.aic)},
          {"coefficients", coefficients_json(r)},
          {"warnings", r.warnings}};
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(cells[i]);
  }
  return line + "\n";
}

}  // namespace

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::string s = fmt::format("{:.{}f}", v, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string coefficient_cell(double estimate, const std::string& stars, double se) {
  return fixed(estimate, 3) + stars + "(" + fixed(se, 3) + ")";
}

std::vector<CrosstabRow> run_crosstab(const ModelConfig& config, const Dataset& data) {
  std::vector<CrosstabRow> out;
  for (const auto& spec : config.variables) {
    CrosstabRow row;
    row.variable = spec.name;
    try {
      row.table = build_crosstab(data, spec);
      row.empty_levels = row.table.empty_rows();
      ChiSqResult res = chi_square_test(row.table.drop_empty_rows());
      if (!row.empty_levels.empty()) res.low_expected_warning = true;
      row.result = res;
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

SingleFit run_fit(const ModelConfig& config, const Dataset& data) {
  SingleFit out{build_design(data, config.variables), {}};
  FitOptions opts;
  opts.max_iter = config.max_iter;
  out.result = fit(out.design, data.successes(), data.trials(), config.links.front(), opts);
  return out;
}

ComparisonReport run_compare_links(const ModelConfig& config, const Dataset& data,
                                   bool parallel) {
  const DesignMatrix design = build_design(data, config.variables);
  FitOptions opts;
  opts.max_iter = config.max_iter;
  return compare_links(design, data.successes(), data.trials(), config.links, opts, parallel);
}

std::string render_crosstab(const std::vector<CrosstabRow>& rows, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j = {{"variable", r.variable}};
      if (r.result) {
        j["chi2"] = r.result->chi2;
        j["df"] = r.result->df;
        j["p"] = r.result->p_value;
        j["stars"] = r.result->star;
        j["low_expected_warning"] = r.result->low_expected_warning;
      }
      j["empty_levels"] = r.empty_levels;
      if (!r.table.counts.empty()) {
        ordered_json tab = ordered_json::object();
        for (std::size_t i = 0; i < r.table.row_labels.size(); ++i) {
          tab[r.table.row_labels[i]] = r.table.counts[i];
        }
        j["table"] = {{"columns", r.table.col_labels}, {"rows", tab}};
      }
      if (!r.error.empty()) j["error"] = r.error;
      arr.push_back(std::move(j));
    }
    return ordered_json{{"crosstab", arr}}.dump(2) + "\n";
  }

  if (format == OutputFormat::Csv) {
    std::string out = csv_line({"variable", "chi2", "df", "p", "stars", "low_expected", "error"});
    for (const auto& r : rows) {
      if (r.result) {
        out += csv_line({r.variable, full(r.result->chi2), std::to_string(r.result->df),
                         full(r.result->p_value), r.result->star,
                         r.result->low_expected_warning ? "true" : "false", ""});
      } else {
        out += csv_line({r.variable, "", "", "", "", "", r.error});
      }
    }
    return out;
  }

  TextTable t;
  t.add({"Variable", "chi2", "df", "P-value", "Warning"});
  for (const auto& r : rows) {
    if (!r.result) {
      t.add({r.variable, "-", "-", "-", "error: " + r.error});
      continue;
    }
    std::string warn;
    if (r.result->low_expected_warning) warn = "expected count < 5";
    if (!r.empty_levels.empty()) {
      std::string levels;
      for (const auto& l : r.empty_levels) levels += (levels.empty() ? "" : ", ") + l;
      warn += (warn.empty() ? "" : "; ") + std::string("empty level: ") + levels;
    }
    t.add({r.variable, fixed(r.result->chi2, 3) + r.result->star, std::to_string(r.result->df),
           fixed(r.result->p_value, 3), warn});
  }
  return "Chi-square tests of association with the response\n\n" + t.render() + "\n" +
         kStarNote + "\n";
}

std::string render_fit(const SingleFit& single, OutputFormat format) {
  const FitResult& r = single.result;
  if (format == OutputFormat::Json) return fit_json(r).dump(2) + "\n";

  if (format == OutputFormat::Csv) {
    std::string out = csv_line({"link", "term", "estimate", "se", "z", "p", "stars"});
    const std::string link(to_string(r.link));
    for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
      out += csv_line({link, r.labels[j], full(r.coefficients[j]), full(r.std_errors[j]),
                       full(r.z_values[j]), full(r.p_values[j]), r.stars[j]});
    }
    out += csv_line({link, "log_likelihood", full(r.log_likelihood), "", "", "", ""});
    out += csv_line({link, "deviance", full(r.deviance), "", "", "", ""});
    out += csv_line({link, "aic", full(r.aic), "", "", "", ""});
    return out;
  }

  TextTable t;
  t.add({"Variable", "Label", "Estimate", "Std.Error", "z value", "Pr(>|z|)", ""});
  for (const auto& row : term_rows(r.labels, single.design.specs)) {
    if (!row.column) {
      t.add({row.variable, row.label, "-"});
      continue;
    }
    const std::size_t j = *row.column;
    t.add({row.variable, row.label, fixed(r.coefficients[j], 3), fixed(r.std_errors[j], 3),
           fixed(r.z_values[j], 3), fixed(r.p_values[j], 4), r.stars[j]});
  }
  TextTable gof;
  gof.add({"Log-likelihood", fixed(r.log_likelihood, 2)});
  gof.add({"Deviance", fixed(r.deviance, 2)});
  gof.add({"AIC", fixed(r.aic, 2)});
  gof.add({"Iterations", std::to_string(r.iterations) +
                             (r.converged ? " (converged)" : " (not converged)")});
  std::string out = "Binomial regression, link: " + std::string(to_string(r.link)) + "\n\n" +
                    t.render() + "\n" + kStarNote + " ref: reference group\n\n" + gof.render();
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string render_comparison(const ComparisonReport& report, OutputFormat format) {
  const std::string selected =
      report.selected ? std::string(to_string(*report.selected)) : std::string("none");

  if (format == OutputFormat::Json) {
    ordered_json fits = ordered_json::array();
    for (const auto& lf : report.fits) {
      if (lf.result) {
        ordered_json j = fit_json(*lf.result);
        j["status"] = "ok";
        fits.push_back(std::move(j));
      } else {
        fits.push_back({{"link", std::string(to_string(lf.link))},
                        {"status", "failed"},
                        {"rank_deficient", lf.rank_deficient},
                        {"error", lf.error}});
      }
    }
    ordered_json j = {{"fits", fits}};
    j["selected"] = report.selected ? ordered_json(selected) : ordered_json(nullptr);
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
  }

  if (format == OutputFormat::Csv) {
    std::string out = csv_line({"link", "term", "estimate", "se", "p", "stars"});
    for (const auto& lf : report.fits) {
      const std::string link(to_string(lf.link));
      if (!lf.result) {
        out += csv_line({link, "failed", "", "", "", ""});
        continue;
      }
      const FitResult& r = *lf.result;
      for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
        out += csv_line({link, r.labels[j], full(r.coefficients[j]), full(r.std_errors[j]),
                         full(r.p_values[j]), r.stars[j]});
      }
      out += csv_line({link, "deviance", full(r.deviance), "", "", ""});
      out += csv_line({link, "aic", full(r.aic), "", "", ""});
    }
    out += csv_line({selected, "selected", "", "", "", ""});
    return out;
  }

  TextTable coef;
  std::vector<std::string> header = {"Variable", "Labels"};
  for (const auto& lf : report.fits) header.emplace_back(to_string(lf.link));
  coef.add(header);
  for (const auto& row : term_rows(report.labels, report.specs)) {
    std::vector<std::string> cells = {row.variable, row.label};
    for (const auto& lf : report.fits) {
      if (!row.column) {
        cells.emplace_back("-");
      } else if (!lf.result) {
        cells.emplace_back("failed");
      } else {
        const FitResult& r = *lf.result;
        const std::size_t j = *row.column;
        cells.push_back(coefficient_cell(r.coefficients[j], r.stars[j], r.std_errors[j]));
      }
    }
    coef.add(std::move(cells));
  }

  TextTable gof;
  std::vector<std::string> gof_header = {"Statistics"};
  for (const auto& lf : report.fits) gof_header.emplace_back(to_string(lf.link));
  gof.add(gof_header);
  std::vector<std::string> dev = {"Deviance"};
  std::vector<std::string> aic_row = {"AIC"};
  std::vector<std::string> conv = {"Converged"};
  bool all_converged = true;
  for (const auto& lf : report.fits) {
    if (!lf.result) {
      dev.emplace_back("failed");
      aic_row.emplace_back("failed");
      conv.emplace_back("no");
      all_converged = false;
      continue;
    }
    dev.push_back(fixed(lf.result->deviance, 2));
    aic_row.push_back(fixed(lf.result->aic, 2));
    conv.emplace_back(lf.result->converged ? "yes" : "no");
    all_converged = all_converged && lf.result->converged;
  }
  gof.add(dev);
  gof.add(aic_row);
  if (!all_converged) gof.add(conv);

  std::string out = "Coefficients of covariates by link function\n\n" + coef.render() + "\n" +
                    kStarNote + " ref: reference group\n\n" + "Goodness of fit\n\n" +
                    gof.render() + "\n";
  for (const auto& w : report.warnings) out += "warning: " + w + "\n";
  out += "selected: " + selected + "\n";
  return out;
}

}  // namespace binreg
