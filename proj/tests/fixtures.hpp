#pragma once

// Synthetic problems shared by the glm, acceptance and report tests.

#include <cstdint>
#include <string>
#include <vector>

#include "binreg/config.hpp"
#include "binreg/design.hpp"
#include "binreg/links.hpp"
#include "binreg/simulate.hpp"
#include "oracles.hpp"

namespace fixture {

inline std::vector<binreg::VariableSpec> three_variables() {
  return {{"area", {"Rural", "Urban"}, "Urban"},
          {"wealth", {"Rich", "Middle", "Poor"}, "Poor"},
          {"education", {"Primary", "Secondary", "Higher", "None"}, "None"}};
}

struct Synthetic {
  binreg::Dataset data;
  binreg::DesignMatrix design;
  std::vector<double> y;
  std::vector<double> n;
};

inline Synthetic make(const std::vector<binreg::VariableSpec>& vars, std::vector<double> truth,
                      std::size_t rows, std::size_t min_group, std::size_t max_group,
                      binreg::LinkKind link, std::uint64_t seed) {
  binreg::SimulationSpec spec{std::move(truth), rows, min_group, max_group};
  Synthetic s;
  s.data = binreg::simulate(vars, spec, link, seed);
  s.design = binreg::build_design(s.data, vars);
  s.y = s.data.successes();
  s.n = s.data.trials();
  return s;
}

inline oracle::Problem to_problem(const Synthetic& s, binreg::LinkKind link) {
  oracle::Problem p;
  const auto& x = s.design.matrix;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = x.row(i);
    p.x.emplace_back(r.begin(), r.end());
  }
  p.y = s.y;
  p.n = s.n;
  p.link = static_cast<int>(link);
  return p;
}

/// Full binomial log-likelihood (with log C(n, y)) at beta, from std::lgamma.
inline double oracle_log_likelihood(const oracle::Problem& p, const std::vector<double>& beta) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.y.size(); ++i) {
    double eta = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) eta += p.x[i][j] * beta[j];
    s += oracle::log_binomial_pmf(p.y[i], p.n[i], oracle::inverse_link(p.link, eta));
  }
  return static_cast<double>(s);
}

}  // namespace fixture
