#include "binreg/glm.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>

#include "binreg/error.hpp"
#include "binreg/specfun.hpp"

namespace binreg {

namespace {

constexpr double kSeparationEta = 30.0;
constexpr int kMaxHalvings = 30;
constexpr int kMaxRefinements = 25;
constexpr double kCoefficientTolerance = 1e-10;
constexpr double kRefinementSlack = 1e-12;
constexpr double kSelectionTieTolerance = 1e-9;

void check_counts(std::span<const double> y, std::span<const double> n,
                  std::span<const double> pi, const char* fn) {
  if (y.size() != n.size() || y.size() != pi.size()) {
    throw DimensionError(std::string(fn) + ": y, n and probabilities differ in length");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(n[i] >= 1.0) || !(y[i] >= 0.0) || y[i] > n[i] || y[i] != std::floor(y[i]) ||
        n[i] != std::floor(n[i])) {
      throw DomainError(std::string(fn) + ": row " + std::to_string(i) +
                        " needs integer counts with 0 <= y <= n, n >= 1");
    }
    if (!(pi[i] > 0.0 && pi[i] < 1.0)) {
      throw DomainError(std::string(fn) + ": probability at row " + std::to_string(i) +
                        " must lie in (0, 1), got " + std::to_string(pi[i]));
    }
  }
}

// Unchecked deviance sum, shared by deviance() and the IRLS loop.
double deviance_sum(std::span<const double> y, std::span<const double> n,
                    std::span<const double> pi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double fitted = n[i] * pi[i];
    const double failures = n[i] - y[i];
    if (y[i] > 0.0) sum += y[i] * std::log(y[i] / fitted);
    if (failures > 0.0) sum += failures * std::log(failures / (n[i] * (1.0 - pi[i])));
  }
  return 2.0 * sum;
}

double clamp_deviance(double d) {
  if (d < -1e-8) {
    throw DomainError("deviance: negative value " + std::to_string(d) +
                      " beyond numerical slack");
  }
  return std::max(d, 0.0);
}

struct Iterate {
  std::vector<double> beta;
  std::vector<double> eta;
  std::vector<double> mu;
  double deviance = 0.0;
};

Iterate evaluate(const Matrix& x, const LinkFns& link, std::vector<double> beta,
                 std::span<const double> y, std::span<const double> n) {
  Iterate it;
  it.eta = mat_vec(x, beta);
  it.beta = std::move(beta);
  it.mu.resize(it.eta.size());
  for (std::size_t i = 0; i < it.eta.size(); ++i) it.mu[i] = clamp_mu(link.g_inv(it.eta[i]));
  it.deviance = deviance_sum(y, n, it.mu);
  return it;
}

// Weighted least-squares step at (eta, mu).
WlsSolution irls_step(const DesignMatrix& design, const LinkFns& link,
                      std::span<const double> eta, std::span<const double> mu,
                      std::span<const double> y, std::span<const double> n) {
  const std::size_t rows = eta.size();
  std::vector<double> w(rows);
  std::vector<double> z(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double d = std::max(link.mu_eta(eta[i]), std::numeric_limits<double>::epsilon());
    const double var = mu[i] * (1.0 - mu[i]);
    w[i] = n[i] * d * d / var;
    z[i] = eta[i] + (y[i] / n[i] - mu[i]) / d;
  }
  return weighted_least_squares(design.matrix, w, z, design.column_labels);
}

}  // namespace

std::string significance_stars(double p) {
  if (p <= 0.01) return "***";
  if (p <= 0.05) return "**";
  if (p <= 0.10) return "*";
  return "";
}

double log_likelihood(std::span<const double> y, std::span<const double> n,
                      std::span<const double> pi) {
  check_counts(y, n, pi, "log_likelihood");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double log_fail = std::log1p(-pi[i]);
    sum += y[i] * (std::log(pi[i]) - log_fail) + n[i] * log_fail +
           specfun::log_choose(static_cast<std::int64_t>(n[i]), static_cast<std::int64_t>(y[i]));
  }
  return sum;
}

double deviance(std::span<const double> y, std::span<const double> n,
                std::span<const double> pi) {
  check_counts(y, n, pi, "deviance");
  return clamp_deviance(deviance_sum(y, n, pi));
}

double aic(double log_likelihood, std::size_t k) {
  return 2.0 * static_cast<double>(k) - 2.0 * log_likelihood;
}

FitResult fit(const DesignMatrix& design, std::span<const double> y, std::span<const double> n,
              LinkKind kind, const FitOptions& opts) {
  const Matrix& x = design.matrix;
  const std::size_t rows = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != rows || n.size() != rows) {
    throw DimensionError("fit: design has " + std::to_string(rows) +
                         " rows but y/n have lengths " + std::to_string(y.size()) + "/" +
                         std::to_string(n.size()));
  }
  if (p == 0 || rows < p) {
    throw DimensionError("fit: need at least as many rows as coefficients (n=" +
                         std::to_string(rows) + ", p=" + std::to_string(p) + ")");
  }
  if (opts.max_iter < 1) throw DomainError("fit: max_iter must be >= 1");

  const LinkFns link = link_for(kind);

  std::vector<double> mu(rows);
  std::vector<double> eta(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    mu[i] = (y[i] + 0.5) / (n[i] + 1.0);
    eta[i] = link.g(mu[i]);
  }
  check_counts(y, n, mu, "fit");

  FitResult res;
  res.link = kind;
  res.labels = design.column_labels;
  res.deviance_trace.push_back(deviance_sum(y, n, mu));

  Iterate current;
  double previous = res.deviance_trace.front();
  // Once the first step has shown the design to be of full rank, a singular
  // weighted system means the weights of some rows have collapsed, which
  // happens when fitted probabilities run off to 0 or 1.
  bool singular = false;
  WlsSolution last_ok;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    WlsSolution step;
    try {
      step = irls_step(design, link, eta, mu, y, n);
    } catch (const RankDeficientError&) {
      if (iter == 1) throw;
      singular = true;
      break;
    }
    last_ok = step;
    Iterate next = evaluate(x, link, step.coefficients, y, n);

    // Step halving on divergence. The first step moves away from the
    // near-saturated starting values, so its deviance is not comparable.
    if (iter > 1) {
      for (int h = 0; h < kMaxHalvings &&
                      (!std::isfinite(next.deviance) || next.deviance > current.deviance);
           ++h) {
        std::vector<double> half(p);
        for (std::size_t j = 0; j < p; ++j) half[j] = 0.5 * (current.beta[j] + next.beta[j]);
        next = evaluate(x, link, std::move(half), y, n);
      }
      if (!std::isfinite(next.deviance) || next.deviance > current.deviance) next = current;
    }

    current = std::move(next);
    eta = current.eta;
    mu = current.mu;
    res.iterations = iter;
    res.deviance_trace.push_back(current.deviance);
    if (iter == 1) res.initial_log_likelihood = log_likelihood(y, n, current.mu);

    if (std::abs(current.deviance - previous) <= opts.tolerance * (std::abs(current.deviance) + 1.0)) {
      res.converged = true;
      break;
    }
    previous = current.deviance;
  }

  // Fisher information at the final estimate. Under a non-canonical link
  // scoring converges only linearly and the deviance rule, being relative to
  // D, stops early on large samples. Once it is met, scoring continues until
  // the coefficients settle.
  auto information = [&](const Iterate& at) -> std::optional<WlsSolution> {
    try {
      return irls_step(design, link, at.eta, at.mu, y, n);
    } catch (const RankDeficientError&) {
      return std::nullopt;
    }
  };
  std::optional<WlsSolution> info = singular ? std::nullopt : information(current);
  for (int extra = 0; res.converged && info && extra < kMaxRefinements; ++extra) {
    Iterate refined = evaluate(x, link, info->coefficients, y, n);
    // Near the optimum D is flat to within rounding; only a real rise stops.
    const double slack = kRefinementSlack * (std::abs(current.deviance) + 1.0);
    if (!std::isfinite(refined.deviance) || refined.deviance > current.deviance + slack) break;
    auto refined_info = information(refined);
    if (!refined_info) break;
    double step = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      step = std::max(step, std::abs(refined.beta[j] - current.beta[j]));
      scale = std::max(scale, std::abs(refined.beta[j]));
    }
    current = std::move(refined);
    ++res.iterations;
    res.deviance_trace.push_back(current.deviance);
    info = std::move(refined_info);
    if (step <= kCoefficientTolerance * scale) break;
  }
  if (!info) {
    singular = true;
    res.converged = false;
  }
  res.covariance = info ? info->covariance : last_ok.covariance;

  res.coefficients = current.beta;
  res.linear_predictor = current.eta;
  res.fitted_probs = current.mu;
  res.std_errors.resize(p);
  res.z_values.resize(p);
  res.p_values.resize(p);
  res.stars.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    res.std_errors[j] = std::sqrt(res.covariance(j, j));
    res.z_values[j] = res.coefficients[j] / res.std_errors[j];
    res.p_values[j] = 2.0 * specfun::norm_cdf(-std::abs(res.z_values[j]));
    res.stars[j] = significance_stars(res.p_values[j]);
  }

  res.log_likelihood = log_likelihood(y, n, res.fitted_probs);
  res.deviance = clamp_deviance(current.deviance);
  res.aic = aic(res.log_likelihood, p);

  if (singular) {
    res.warnings.push_back(std::string(to_string(kind)) +
                           ": information matrix became singular after " +
                           std::to_string(res.iterations) +
                           " iterations; possible separation");
  } else if (!res.converged) {
    res.warnings.push_back(std::string(to_string(kind)) + ": IRLS did not converge in " +
                           std::to_string(opts.max_iter) + " iterations");
  }
  const double max_eta = std::ranges::max(res.linear_predictor, {}, [](double v) {
    return std::abs(v);
  });
  const bool at_clamp = std::ranges::any_of(res.fitted_probs, [](double m) {
    return m <= kMuEpsilon || m >= 1.0 - kMuEpsilon;
  });
  if (std::abs(max_eta) > kSeparationEta) {
    res.warnings.push_back(std::string(to_string(kind)) +
                           ": |linear predictor| exceeds 30; possible separation");
  } else if (at_clamp) {
    res.warnings.push_back(std::string(to_string(kind)) +
                           ": fitted probabilities numerically 0 or 1; possible separation");
  }
  return res;
}

ComparisonReport compare_links(const DesignMatrix& design, std::span<const double> y,
                               std::span<const double> n, std::span<const LinkKind> kinds,
                               const FitOptions& opts, bool parallel) {
  if (kinds.empty()) throw DomainError("compare_links: no links requested");

  auto run = [&](LinkKind kind) {
    LinkFit lf;
    lf.link = kind;
    try {
      lf.result = fit(design, y, n, kind, opts);
    } catch (const RankDeficientError& e) {
      lf.error = e.what();
      lf.rank_deficient = true;
    } catch (const Error& e) {
      lf.error = e.what();
    }
    return lf;
  };

  ComparisonReport report;
  report.labels = design.column_labels;
  report.specs = design.specs;
  if (parallel) {
    std::vector<std::future<LinkFit>> pending;
    for (LinkKind k : kinds) pending.push_back(std::async(std::launch::async, run, k));
    for (auto& f : pending) report.fits.push_back(f.get());
  } else {
    for (LinkKind k : kinds) report.fits.push_back(run(k));
  }

  auto rank = [](LinkKind k) {
    return std::ranges::find(kAllLinks, k) - kAllLinks.begin();
  };
  // Values equal to 1e-9 relative count as ties: fits that attain the same
  // likelihood under different links differ only by rounding.
  auto differs = [](double a, double b) {
    return std::abs(a - b) > kSelectionTieTolerance * std::max({std::abs(a), std::abs(b), 1.0});
  };
  auto better = [&](const FitResult& a, const FitResult& b) {
    if (differs(a.aic, b.aic)) return a.aic < b.aic;
    if (differs(a.deviance, b.deviance)) return a.deviance < b.deviance;
    return rank(a.link) < rank(b.link);
  };
  const FitResult* best = nullptr;
  for (const auto& lf : report.fits) {
    if (!lf.result) {
      report.warnings.push_back(std::string(to_string(lf.link)) + ": fit failed: " + lf.error);
      continue;
    }
    for (const auto& w : lf.result->warnings) report.warnings.push_back(w);
    if (!lf.result->converged) continue;
    const FitResult& r = *lf.result;
    if (best == nullptr || better(r, *best)) best = &r;
  }
  if (best != nullptr) report.selected = best->link;
  return report;
}

}  // namespace binreg
