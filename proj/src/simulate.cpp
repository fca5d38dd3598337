#include "binreg/simulate.hpp"

#include <cmath>

#include "binreg/csv.hpp"
#include "binreg/error.hpp"

namespace binreg {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::int64_t sample_binomial(std::mt19937_64& rng, std::int64_t n, double pi) {
  if (n < 0) throw DomainError("sample_binomial: negative trial count");
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainError("sample_binomial: pi outside [0, 1]");
  const double u = uniform01(rng);
  const bool flip = pi > 0.5;
  const double q = flip ? 1.0 - pi : pi;
  if (q == 0.0) return flip ? n : 0;

  const double odds = q / (1.0 - q);
  double pmf = std::pow(1.0 - q, static_cast<double>(n));
  double cdf = pmf;
  std::int64_t k = 0;
  while (u >= cdf && k < n) {
    pmf *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cdf += pmf;
  }
  return flip ? n - k : k;
}

std::size_t design_width(const std::vector<VariableSpec>& variables) {
  std::size_t p = 1;
  for (const auto& v : variables) p += v.levels.size() - 1;
  return p;
}

Dataset simulate(const std::vector<VariableSpec>& variables, const SimulationSpec& spec,
                 LinkKind link, std::uint64_t seed) {
  for (const auto& v : variables) v.validate();
  const std::size_t p = design_width(variables);
  if (spec.truth.size() != p) {
    throw DimensionError("simulate: truth has " + std::to_string(spec.truth.size()) +
                         " coefficients but the design has " + std::to_string(p) + " columns");
  }
  if (spec.min_group < 1 || spec.min_group > spec.max_group) {
    throw ValidationError("simulate: group size range must satisfy 1 <= min <= max");
  }

  const LinkFns fns = link_for(link);
  std::mt19937_64 rng(seed);
  Dataset data;
  data.variables = variables;
  data.rows.reserve(spec.rows);
  for (std::size_t i = 0; i < spec.rows; ++i) {
    Observation obs;
    double eta = spec.truth[0];
    std::size_t col = 1;
    for (const auto& v : variables) {
      const auto k = v.levels.size();
      const auto pick = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(k)), k - 1);
      const std::string& level = v.levels[pick];
      for (const auto& l : v.levels) {
        if (l == v.reference) continue;
        if (l == level) eta += spec.truth[col];
        ++col;
      }
      obs.levels.push_back(level);
    }
    std::size_t trials = spec.min_group;
    if (spec.max_group > spec.min_group) {
      const auto span = spec.max_group - spec.min_group + 1;
      trials += std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(span)),
                         span - 1);
    }
    obs.trials = static_cast<std::int64_t>(trials);
    obs.successes = sample_binomial(rng, obs.trials, fns.g_inv(eta));
    data.rows.push_back(std::move(obs));
  }
  return data;
}

std::string dataset_to_csv(const Dataset& data, const std::string& successes_column,
                           const std::string& trials_column) {
  std::string out = csv_escape(successes_column) + "," + csv_escape(trials_column);
  for (const auto& v : data.variables) out += "," + csv_escape(v.name);
  out += "\n";
  for (const auto& row : data.rows) {
    out += std::to_string(row.successes) + "," + std::to_string(row.trials);
    for (const auto& l : row.levels) out += "," + csv_escape(l);
    out += "\n";
  }
  return out;
}

}  // namespace binreg
