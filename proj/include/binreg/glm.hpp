#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binreg/design.hpp"
#include "binreg/linalg.hpp"
#include "binreg/links.hpp"

namespace binreg {

struct FitOptions {
  int max_iter = 100;
  double tolerance = 1e-10;  // relative change in deviance
};

/// Wald significance marker: "***" p <= 0.01, "**" p <= 0.05, "*" p <= 0.10.
std::string significance_stars(double p);

struct FitResult {
  LinkKind link = LinkKind::Logit;
  std::vector<std::string> labels;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> z_values;
  std::vector<double> p_values;
  std::vector<std::string> stars;
  Matrix covariance;

  double log_likelihood = 0.0;
  double deviance = 0.0;
  double aic = 0.0;

  int iterations = 0;
  bool converged = false;
  /// Deviance after each IRLS step; front() is the deviance at the starting
  /// values.
  std::vector<double> deviance_trace;
  /// Log-likelihood at the first IRLS iterate.
  double initial_log_likelihood = 0.0;

  std::vector<double> linear_predictor;
  std::vector<double> fitted_probs;
  std::vector<std::string> warnings;
};

/// Binomial log-likelihood including the log C(n, y) constant:
///   sum y log(pi / (1 - pi)) + n log(1 - pi) + log C(n, y).
double log_likelihood(std::span<const double> y, std::span<const double> n,
                      std::span<const double> pi);

/// 2 sum [y log(y / n pi) + (n - y) log((n - y) / (n - n pi))], with
/// 0 log 0 = 0. Clamped at zero after a -1e-8 slack check.
double deviance(std::span<const double> y, std::span<const double> n,
                std::span<const double> pi);

/// 2k - 2 ell.
double aic(double log_likelihood, std::size_t k);

/// Maximum-likelihood fit by IRLS (Fisher scoring) with step halving when
/// the deviance increases. Throws RankDeficientError on a singular design;
/// non-convergence is reported through `converged` and `warnings`.
FitResult fit(const DesignMatrix& design, std::span<const double> y,
              std::span<const double> n, LinkKind kind, const FitOptions& opts = {});

struct LinkFit {
  LinkKind link = LinkKind::Logit;
  std::optional<FitResult> result;
  std::string error;  // nonempty iff the fit threw
  bool rank_deficient = false;
};

struct ComparisonReport {
  std::vector<std::string> labels;
  std::vector<VariableSpec> specs;
  std::vector<LinkFit> fits;  // in request order
  /// Minimum-AIC converged link; ties (1e-9 relative) go to lower deviance,
  /// then canonical link order.
  std::optional<LinkKind> selected;
  std::vector<std::string> warnings;
};

/// Fits every requested link. With `parallel`, fits run on separate threads;
/// the report is identical to the sequential one.
ComparisonReport compare_links(const DesignMatrix& design, std::span<const double> y,
                               std::span<const double> n, std::span<const LinkKind> kinds,
                               const FitOptions& opts = {}, bool parallel = false);

}  // namespace binreg
