#pragma once

#include <optional>
#include <string>
#include <vector>

#include "binreg/assoc.hpp"
#include "binreg/config.hpp"
#include "binreg/design.hpp"
#include "binreg/glm.hpp"

// Workflows behind the CLI subcommands and their report renderers.

namespace binreg {

struct CrosstabRow {
  std::string variable;
  CrossTab table;
  std::optional<ChiSqResult> result;
  std::vector<std::string> empty_levels;
  std::string error;  // nonempty when the test could not be run
};

/// One chi-square screen per declared variable, in config order. Levels with
/// no observations are dropped from the test and flagged; a degenerate table
/// records an error for that variable only.
std::vector<CrosstabRow> run_crosstab(const ModelConfig& config, const Dataset& data);

struct SingleFit {
  DesignMatrix design;
  FitResult result;
};

/// Fits the first configured link.
SingleFit run_fit(const ModelConfig& config, const Dataset& data);

ComparisonReport run_compare_links(const ModelConfig& config, const Dataset& data,
                                   bool parallel = false);

/// Fixed-point rendering that never prints a negative zero.
std::string fixed(double v, int decimals);

/// "-0.248***(0.054)"
std::string coefficient_cell(double estimate, const std::string& stars, double se);

std::string render_crosstab(const std::vector<CrosstabRow>& rows, OutputFormat format);
std::string render_fit(const SingleFit& fit, OutputFormat format);
std::string render_comparison(const ComparisonReport& report, OutputFormat format);

inline constexpr const char* kStarNote =
    "Note: '*' 10%, '**' 5%, '***' 1% significant level.";

}  // namespace binreg
