#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binreg/design.hpp"
#include "binreg/links.hpp"

namespace binreg {

enum class OutputFormat { Text, Csv, Json };

std::string_view to_string(OutputFormat f);
std::optional<OutputFormat> parse_format(std::string_view name);

/// Parameters of the synthetic-data generator.
struct SimulationSpec {
  std::vector<double> truth;  // one coefficient per design column
  std::size_t rows = 0;
  std::size_t min_group = 1;
  std::size_t max_group = 1;  // trials per row drawn uniformly in [min, max]
};

/// Model configuration, read from a JSON file:
///
///   {
///     "response":  {"successes": "y", "trials": "n"},
///     "variables": [{"name": "anc", "levels": ["No", "Yes"], "reference": "No"}],
///     "links":     ["logit", "probit", "cloglog", "cauchit"],
///     "format":    "text",
///     "max_iter":  100,
///     "seed":      7,
///     "simulate":  {"truth": [-0.2, 0.5], "rows": 1000, "group_size": 4}
///   }
///
/// Only "response" and "variables" are required. "group_size" accepts a
/// single count or a [min, max] pair.
struct ModelConfig {
  std::string successes_column = "y";
  std::string trials_column = "n";
  std::vector<VariableSpec> variables;
  std::vector<LinkKind> links = {kAllLinks.begin(), kAllLinks.end()};
  OutputFormat format = OutputFormat::Text;
  std::optional<std::uint64_t> seed;
  int max_iter = 100;
  std::optional<SimulationSpec> simulate;

  /// Throws ValidationError on a violated invariant.
  void validate() const;
};

ModelConfig parse_config(std::string_view json_text);
ModelConfig load_config(const std::filesystem::path& path);

}  // namespace binreg
