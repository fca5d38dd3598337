#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "binreg/config.hpp"
#include "binreg/design.hpp"
#include "binreg/links.hpp"

namespace binreg {

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
/// Both the engine and this mapping are fully specified, so streams are
/// identical across platforms and standard libraries.
double uniform01(std::mt19937_64& rng);

/// Binomial(n, pi) by sequential inversion of the CDF using one uniform.
/// Sampling runs on the smaller of pi and 1 - pi.
std::int64_t sample_binomial(std::mt19937_64& rng, std::int64_t n, double pi);

/// Number of design columns implied by the variables (intercept included).
std::size_t design_width(const std::vector<VariableSpec>& variables);

/// Draws `spec.rows` observations. Per row, in order: one uniform per
/// variable picks a level (floor(u * levels)); when min_group < max_group a
/// further uniform picks the trial count; eta = x' truth, pi = g^{-1}(eta)
/// under `link`; finally y ~ Binomial(trials, pi) from one more uniform.
Dataset simulate(const std::vector<VariableSpec>& variables, const SimulationSpec& spec,
                 LinkKind link, std::uint64_t seed);

/// Writes a dataset in the layout parse_csv expects: successes, trials,
/// then one column per variable. LF line endings.
std::string dataset_to_csv(const Dataset& data, const std::string& successes_column,
                           const std::string& trials_column);

}  // namespace binreg
