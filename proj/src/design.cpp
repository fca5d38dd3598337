#include "binreg/design.hpp"

#include <algorithm>
#include <set>

#include "binreg/error.hpp"

namespace binreg {

namespace {

std::size_t index_of(const std::vector<std::string>& v, const std::string& s) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
}

}  // namespace

void VariableSpec::validate() const {
  if (name.empty()) throw ValidationError("variable with empty name");
  if (levels.size() < 2) {
    throw ValidationError("variable '" + name + "' needs at least two levels");
  }
  std::set<std::string> seen;
  for (const auto& l : levels) {
    if (!seen.insert(l).second) {
      throw ValidationError("variable '" + name + "' lists level '" + l + "' twice");
    }
  }
  if (!seen.contains(reference)) {
    throw ValidationError("variable '" + name + "': reference level '" + reference +
                          "' is not among its levels");
  }
}

std::vector<double> Dataset::successes() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(static_cast<double>(r.successes));
  return out;
}

std::vector<double> Dataset::trials() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(static_cast<double>(r.trials));
  return out;
}

std::vector<Violation> validate_dataset(const Dataset& data) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    if (row.trials < 1) {
      out.push_back({i, "trials must be >= 1, got " + std::to_string(row.trials)});
    }
    if (row.successes < 0 || row.successes > row.trials) {
      out.push_back({i, "successes must satisfy 0 <= y <= n, got y=" +
                            std::to_string(row.successes) + " n=" + std::to_string(row.trials)});
    }
    if (row.levels.size() != data.variables.size()) {
      out.push_back({i, "expected " + std::to_string(data.variables.size()) +
                            " categorical values, got " + std::to_string(row.levels.size())});
      continue;
    }
    for (std::size_t v = 0; v < data.variables.size(); ++v) {
      const auto& spec = data.variables[v];
      if (index_of(spec.levels, row.levels[v]) == spec.levels.size()) {
        out.push_back({i, "variable '" + spec.name + "' has undeclared level '" +
                              row.levels[v] + "'"});
      }
    }
  }
  return out;
}

std::string column_label(const std::string& variable, const std::string& level) {
  return variable + "=" + level;
}

DesignMatrix build_design(const Dataset& data, const std::vector<VariableSpec>& specs) {
  std::vector<std::string> names;
  for (const auto& v : data.variables) names.push_back(v.name);

  std::vector<std::size_t> source;  // dataset variable index per spec
  std::vector<std::string> labels = {kInterceptLabel};
  for (const auto& spec : specs) {
    spec.validate();
    const std::size_t idx = index_of(names, spec.name);
    if (idx == names.size()) {
      throw ValidationError("build_design: dataset has no variable '" + spec.name + "'");
    }
    source.push_back(idx);
    for (const auto& level : spec.levels) {
      if (level != spec.reference) labels.push_back(column_label(spec.name, level));
    }
  }

  const std::size_t n = data.rows.size();
  Matrix x(n, labels.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = data.rows[i];
    x(i, 0) = 1.0;
    std::size_t col = 1;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const auto& spec = specs[s];
      if (source[s] >= row.levels.size()) {
        throw ValidationError("build_design: row " + std::to_string(i + 1) +
                              " has no value for variable '" + spec.name + "'");
      }
      const std::string& value = row.levels[source[s]];
      if (index_of(spec.levels, value) == spec.levels.size()) {
        throw ValidationError("build_design: row " + std::to_string(i + 1) + ", variable '" +
                              spec.name + "': unknown level '" + value + "'");
      }
      for (const auto& level : spec.levels) {
        if (level == spec.reference) continue;
        x(i, col++) = (value == level) ? 1.0 : 0.0;
      }
    }
  }
  return {std::move(x), std::move(labels), specs};
}

DesignMatrix intercept_design(std::size_t rows) {
  return {Matrix(rows, 1, 1.0), {kInterceptLabel}, {}};
}

}  // namespace binreg
