#include "binreg/assoc.hpp"

#include <algorithm>

#include "binreg/error.hpp"
#include "binreg/glm.hpp"
#include "binreg/specfun.hpp"

namespace binreg {

std::vector<std::string> CrossTab::empty_rows() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (std::ranges::all_of(counts[i], [](std::int64_t c) { return c == 0; })) {
      out.push_back(row_labels[i]);
    }
  }
  return out;
}

CrossTab CrossTab::drop_empty_rows() const {
  CrossTab out;
  out.col_labels = col_labels;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (std::ranges::any_of(counts[i], [](std::int64_t c) { return c != 0; })) {
      out.row_labels.push_back(row_labels[i]);
      out.counts.push_back(counts[i]);
    }
  }
  return out;
}

CrossTab build_crosstab(const Dataset& data, const VariableSpec& variable) {
  std::size_t var = data.variables.size();
  for (std::size_t v = 0; v < data.variables.size(); ++v) {
    if (data.variables[v].name == variable.name) var = v;
  }
  if (var == data.variables.size()) {
    throw ValidationError("build_crosstab: dataset has no variable '" + variable.name + "'");
  }

  CrossTab tab;
  tab.row_labels = variable.levels;
  tab.col_labels = {"malnourished", "not"};
  tab.counts.assign(variable.levels.size(), std::vector<std::int64_t>(2, 0));
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    const auto it = std::ranges::find(variable.levels, row.levels.at(var));
    if (it == variable.levels.end()) {
      throw ValidationError("build_crosstab: row " + std::to_string(i) + ", variable '" +
                            variable.name + "': unknown level '" + row.levels[var] + "'");
    }
    auto& cell = tab.counts[static_cast<std::size_t>(it - variable.levels.begin())];
    cell[0] += row.successes;
    cell[1] += row.trials - row.successes;
  }
  return tab;
}

ChiSqResult chi_square_test(const CrossTab& tab) {
  const std::size_t r = tab.counts.size();
  const std::size_t c = r == 0 ? 0 : tab.counts.front().size();
  if (r < 2 || c < 2) throw ValidationError("chi_square_test: table must be at least 2x2");

  std::vector<double> row_sum(r, 0.0);
  std::vector<double> col_sum(c, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    if (tab.counts[i].size() != c) throw ValidationError("chi_square_test: ragged table");
    for (std::size_t j = 0; j < c; ++j) {
      if (tab.counts[i][j] < 0) throw ValidationError("chi_square_test: negative count");
      const auto v = static_cast<double>(tab.counts[i][j]);
      row_sum[i] += v;
      col_sum[j] += v;
      total += v;
    }
  }
  auto label = [](const std::vector<std::string>& labels, std::size_t k) {
    return k < labels.size() ? labels[k] : std::to_string(k);
  };
  for (std::size_t i = 0; i < r; ++i) {
    if (row_sum[i] == 0.0) {
      throw ValidationError("chi_square_test: row '" + label(tab.row_labels, i) +
                            "' has no observations");
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (col_sum[j] == 0.0) {
      throw ValidationError("chi_square_test: column '" + label(tab.col_labels, j) +
                            "' has no observations");
    }
  }

  ChiSqResult res;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_sum[i] * col_sum[j] / total;
      const double diff = static_cast<double>(tab.counts[i][j]) - expected;
      res.chi2 += diff * diff / expected;
      if (expected < 5.0) res.low_expected_warning = true;
    }
  }
  res.df = static_cast<int>((r - 1) * (c - 1));
  res.p_value = specfun::chisq_sf(res.chi2, res.df);
  res.star = significance_stars(res.p_value);
  return res;
}

}  // namespace binreg
