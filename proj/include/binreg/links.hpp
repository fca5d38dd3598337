#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace binreg {

/// Binomial link functions. Each maps the success probability onto the
/// linear-predictor scale; its inverse is the CDF of the link's tolerance
/// distribution (logistic, normal, Gumbel-minimum, standard Cauchy).
enum class LinkKind { Logit, Probit, Cloglog, Cauchit };

/// Canonical order, also used to break AIC ties.
inline constexpr std::array<LinkKind, 4> kAllLinks = {LinkKind::Logit, LinkKind::Probit,
                                                      LinkKind::Cloglog, LinkKind::Cauchit};

/// "logit" | "probit" | "cloglog" | "cauchit"
std::string_view to_string(LinkKind kind);
std::optional<LinkKind> parse_link(std::string_view name);

/// g, g^{-1} and d mu / d eta for one link. Plain function pointers: the
/// bundle is a trivially copyable value.
struct LinkFns {
  LinkKind kind;
  double (*g)(double p);        // p in (0, 1); DomainError otherwise
  double (*g_inv)(double eta);  // result in [0, 1]
  double (*mu_eta)(double eta);
};

LinkFns link_for(LinkKind kind);

inline constexpr double kMuEpsilon = 1e-10;

/// Clamps a probability into [1e-10, 1 - 1e-10].
double clamp_mu(double p);

}  // namespace binreg
