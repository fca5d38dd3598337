#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binreg/linalg.hpp"

namespace binreg {

/// A categorical predictor: its ordered levels and the omitted reference
/// level for treatment coding.
struct VariableSpec {
  std::string name;
  std::vector<std::string> levels;
  std::string reference;

  /// Throws ValidationError unless levels are distinct, number at least two,
  /// and include the reference.
  void validate() const;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

/// One grouped observation: `successes` out of `trials`, plus one level per
/// dataset variable (aligned with Dataset::variables).
struct Observation {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  std::vector<std::string> levels;
};

struct Dataset {
  std::vector<VariableSpec> variables;
  std::vector<Observation> rows;

  std::vector<double> successes() const;
  std::vector<double> trials() const;
};

struct Violation {
  std::size_t row = 0;  // zero-based
  std::string message;
};

/// Reports every row with y < 0, y > n, n < 1, a missing value or an
/// undeclared level. Never throws.
std::vector<Violation> validate_dataset(const Dataset& data);

struct DesignMatrix {
  Matrix matrix;
  std::vector<std::string> column_labels;  // "(Intercept)", then "var=level"
  std::vector<VariableSpec> specs;
};

/// Intercept plus one 0/1 column per non-reference level, in spec order then
/// declared level order. `specs` may reorder, subset, or re-reference the
/// dataset's variables.
DesignMatrix build_design(const Dataset& data, const std::vector<VariableSpec>& specs);

/// Intercept-only design with n rows.
DesignMatrix intercept_design(std::size_t rows);

inline constexpr const char* kInterceptLabel = "(Intercept)";

std::string column_label(const std::string& variable, const std::string& level);

}  // namespace binreg
