// binreg command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binreg/binreg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int exit_code_for(binreg_status st) {
  switch (st) {
    case BINREG_OK:
      return kExitOk;
    case BINREG_E_RANK_DEFICIENT:
    case BINREG_E_NUMERICAL:
      return kExitNumerical;
    default:
      return kExitValidation;
  }
}

int report_error(binreg_status st) {
  std::cerr << "binreg: " << binreg_status_string(st) << ": " << binreg_last_error() << "\n";
  return exit_code_for(st);
}

struct Session {
  binreg_session* handle = nullptr;
  ~Session() { binreg_session_free(handle); }
};

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { binreg_string_free(text); }
};

std::vector<double> parse_truth(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad coefficient '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binomial regression with logit, probit, cloglog and cauchit links"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string data_path;
  std::string config_path;
  std::string format_name;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;

  app.add_option("--config", config_path, "Model configuration (JSON)")->required();
  app.add_option("--data", data_path, "Input CSV (successes, trials, categorical columns)");
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--seed", seed, "Seed for simulate");
  app.add_option("--max-iter", max_iter, "IRLS iteration limit")->check(CLI::PositiveNumber);

  auto* crosstab = app.add_subcommand("crosstab", "Chi-square screening of each variable");
  auto* fit = app.add_subcommand("fit", "Fit the first configured link");
  auto* compare = app.add_subcommand("compare-links", "Fit every configured link and compare");
  auto* simulate = app.add_subcommand("simulate", "Write a synthetic dataset as CSV");

  std::string truth_text;
  std::size_t rows = 0;
  std::size_t group_size = 0;
  std::string out_path;
  simulate->add_option("--truth", truth_text, "Comma-separated true coefficients");
  simulate->add_option("--rows", rows, "Number of rows");
  simulate->add_option("--group-size", group_size, "Trials per row");
  simulate->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  const bool needs_data = !simulate->parsed();
  if (needs_data && data_path.empty()) {
    std::cerr << "binreg: --data is required for this subcommand\n";
    return kExitValidation;
  }

  Session session;
  binreg_status st = binreg_session_open(config_path.c_str(),
                                         needs_data ? data_path.c_str() : nullptr, &session.handle);
  if (st != BINREG_OK) return report_error(st);
  if (max_iter) binreg_session_set_max_iter(session.handle, *max_iter);
  if (seed) binreg_session_set_seed(session.handle, *seed);

  binreg_format format = BINREG_FORMAT_TEXT;
  binreg_session_format(session.handle, &format);
  if (format_name == "text") format = BINREG_FORMAT_TEXT;
  if (format_name == "csv") format = BINREG_FORMAT_CSV;
  if (format_name == "json") format = BINREG_FORMAT_JSON;

  OwnedString output;
  if (crosstab->parsed()) {
    st = binreg_report_crosstab(session.handle, format, &output.text);
  } else if (fit->parsed()) {
    st = binreg_report_fit(session.handle, format, &output.text);
  } else if (compare->parsed()) {
    st = binreg_report_compare_links(session.handle, format, &output.text);
  } else {
    std::vector<double> truth;
    try {
      if (!truth_text.empty()) truth = parse_truth(truth_text);
    } catch (const std::exception& e) {
      std::cerr << "binreg: --truth: " << e.what() << "\n";
      return kExitValidation;
    }
    st = binreg_simulate_csv(session.handle, truth.empty() ? nullptr : truth.data(), truth.size(),
                             rows, group_size, &output.text);
    if (st == BINREG_OK && !out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      out << output.text;
      if (!out) {
        std::cerr << "binreg: cannot write '" << out_path << "'\n";
        return kExitValidation;
      }
      return kExitOk;
    }
  }

  if (output.text != nullptr) std::fwrite(output.text, 1, std::char_traits<char>::length(output.text), stdout);
  if (st != BINREG_OK) return report_error(st);
  return kExitOk;
}
