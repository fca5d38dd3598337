#include "binreg/links.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "binreg/error.hpp"
#include "binreg/specfun.hpp"

namespace binreg {

namespace {

void require_open_unit(double p, const char* link) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(link) + " link: probability must lie in (0, 1), got " +
                      std::to_string(p));
  }
}

double logit_g(double p) {
  require_open_unit(p, "logit");
  return std::log(p) - std::log1p(-p);
}

double logit_g_inv(double eta) {
  const double e = std::exp(-std::abs(eta));
  return eta >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
}

double logit_mu_eta(double eta) {
  const double e = std::exp(-std::abs(eta));
  const double denom = 1.0 + e;
  return e / (denom * denom);
}

double probit_g(double p) {
  require_open_unit(p, "probit");
  return specfun::norm_quantile(p);
}

double probit_g_inv(double eta) { return specfun::norm_cdf(eta); }

double probit_mu_eta(double eta) { return specfun::norm_pdf(eta); }

double cloglog_g(double p) {
  require_open_unit(p, "cloglog");
  return std::log(-std::log1p(-p));
}

double cloglog_g_inv(double eta) { return -std::expm1(-std::exp(eta)); }

double cloglog_mu_eta(double eta) {
  // exp(eta - exp(eta)); clamp eta so exp() cannot overflow to inf - inf.
  const double e = std::min(eta, 700.0);
  return std::exp(e - std::exp(e));
}

double cauchit_g(double p) {
  require_open_unit(p, "cauchit");
  return std::tan(std::numbers::pi * (p - 0.5));
}

double cauchit_g_inv(double eta) {
  // For eta < 0 use atan(eta) + pi/2 = atan(-1/eta) to keep small
  // probabilities accurate.
  if (eta < 0.0) return std::atan(-1.0 / eta) / std::numbers::pi;
  return 0.5 + std::atan(eta) / std::numbers::pi;
}

double cauchit_mu_eta(double eta) {
  return 1.0 / (std::numbers::pi * (1.0 + eta * eta));
}

}  // namespace

std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::Logit:
      return "logit";
    case LinkKind::Probit:
      return "probit";
    case LinkKind::Cloglog:
      return "cloglog";
    case LinkKind::Cauchit:
      return "cauchit";
  }
  return "unknown";
}

std::optional<LinkKind> parse_link(std::string_view name) {
  for (LinkKind k : kAllLinks) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

LinkFns link_for(LinkKind kind) {
  switch (kind) {
    case LinkKind::Logit:
      return {kind, logit_g, logit_g_inv, logit_mu_eta};
    case LinkKind::Probit:
      return {kind, probit_g, probit_g_inv, probit_mu_eta};
    case LinkKind::Cloglog:
      return {kind, cloglog_g, cloglog_g_inv, cloglog_mu_eta};
    case LinkKind::Cauchit:
      return {kind, cauchit_g, cauchit_g_inv, cauchit_mu_eta};
  }
  throw DomainError("link_for: unknown link kind");
}

double clamp_mu(double p) { return std::clamp(p, kMuEpsilon, 1.0 - kMuEpsilon); }

}  // namespace binreg
