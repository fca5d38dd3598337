#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binreg/design.hpp"

namespace binreg {

/// r x c table of observed counts.
struct CrossTab {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels = {"malnourished", "not"};
  std::vector<std::vector<std::int64_t>> counts;

  /// Labels of rows whose counts are all zero.
  std::vector<std::string> empty_rows() const;
  /// Copy without all-zero rows.
  CrossTab drop_empty_rows() const;
};

struct ChiSqResult {
  double chi2 = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::string star;
  bool low_expected_warning = false;  // some expected count below 5
};

/// Rows are the variable's declared levels; columns are the summed
/// successes ("malnourished") and failures ("not") over observations
/// holding that level. Levels with no observations stay as zero rows.
CrossTab build_crosstab(const Dataset& data, const VariableSpec& variable);

/// Pearson chi-square test of independence, no continuity correction.
/// Throws ValidationError on tables smaller than 2x2 or with an all-zero
/// row or column (the message names the label).
ChiSqResult chi_square_test(const CrossTab& tab);

}  // namespace binreg
