#include "binreg/binreg.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "binreg/commands.hpp"
#include "binreg/config.hpp"
#include "binreg/csv.hpp"
#include "binreg/error.hpp"
#include "binreg/glm.hpp"
#include "binreg/links.hpp"
#include "binreg/simulate.hpp"

struct binreg_session {
  binreg::ModelConfig config;
  std::optional<binreg::Dataset> data;
};

struct binreg_fit {
  binreg::FitResult result;
};

namespace {

thread_local std::string g_last_error;

binreg_status fail(binreg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

binreg_status status_for(binreg::ErrorKind kind) {
  using binreg::ErrorKind;
  switch (kind) {
    case ErrorKind::Domain:
      return BINREG_E_DOMAIN;
    case ErrorKind::Dimension:
      return BINREG_E_INVALID_ARGUMENT;
    case ErrorKind::RankDeficient:
      return BINREG_E_RANK_DEFICIENT;
    case ErrorKind::Validation:
      return BINREG_E_VALIDATION;
    case ErrorKind::Parse:
      return BINREG_E_PARSE;
    case ErrorKind::Io:
      return BINREG_E_IO;
  }
  return BINREG_E_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
binreg_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const binreg::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BINREG_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BINREG_E_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<binreg::LinkKind> to_kind(binreg_link link) {
  switch (link) {
    case BINREG_LINK_LOGIT:
      return binreg::LinkKind::Logit;
    case BINREG_LINK_PROBIT:
      return binreg::LinkKind::Probit;
    case BINREG_LINK_CLOGLOG:
      return binreg::LinkKind::Cloglog;
    case BINREG_LINK_CAUCHIT:
      return binreg::LinkKind::Cauchit;
  }
  return std::nullopt;
}

std::optional<binreg::OutputFormat> to_format(binreg_format f) {
  switch (f) {
    case BINREG_FORMAT_TEXT:
      return binreg::OutputFormat::Text;
    case BINREG_FORMAT_CSV:
      return binreg::OutputFormat::Csv;
    case BINREG_FORMAT_JSON:
      return binreg::OutputFormat::Json;
  }
  return std::nullopt;
}

binreg_status need_data(const binreg_session* s) {
  if (s == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "session is NULL");
  if (!s->data) return fail(BINREG_E_INVALID_ARGUMENT, "session has no dataset loaded");
  return BINREG_OK;
}

}  // namespace

extern "C" {

const char* binreg_version(void) { return "1.0.0"; }

const char* binreg_status_string(binreg_status status) {
  switch (status) {
    case BINREG_OK:
      return "ok";
    case BINREG_E_INVALID_ARGUMENT:
      return "invalid argument";
    case BINREG_E_IO:
      return "i/o error";
    case BINREG_E_PARSE:
      return "parse error";
    case BINREG_E_VALIDATION:
      return "validation error";
    case BINREG_E_DOMAIN:
      return "domain error";
    case BINREG_E_RANK_DEFICIENT:
      return "rank-deficient design";
    case BINREG_E_NUMERICAL:
      return "numerical failure";
    case BINREG_E_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* binreg_last_error(void) { return g_last_error.c_str(); }

void binreg_string_free(char* s) { std::free(s); }

binreg_status binreg_link_parse(const char* name, binreg_link* out) {
  if (name == nullptr || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "NULL argument");
  const auto kind = binreg::parse_link(name);
  if (!kind) return fail(BINREG_E_INVALID_ARGUMENT, std::string("unknown link '") + name + "'");
  *out = static_cast<binreg_link>(*kind);
  return BINREG_OK;
}

const char* binreg_link_name(binreg_link link) {
  const auto kind = to_kind(link);
  return kind ? binreg::to_string(*kind).data() : nullptr;
}

binreg_status binreg_link_g(binreg_link link, double p, double* out) {
  const auto kind = to_kind(link);
  if (!kind || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "invalid link or NULL output");
  return guarded([&] {
    *out = binreg::link_for(*kind).g(p);
    return BINREG_OK;
  });
}

binreg_status binreg_link_inverse(binreg_link link, double eta, double* mu, double* mu_eta) {
  const auto kind = to_kind(link);
  if (!kind) return fail(BINREG_E_INVALID_ARGUMENT, "invalid link");
  return guarded([&] {
    const auto fns = binreg::link_for(*kind);
    if (mu != nullptr) *mu = fns.g_inv(eta);
    if (mu_eta != nullptr) *mu_eta = fns.mu_eta(eta);
    return BINREG_OK;
  });
}

binreg_status binreg_session_open(const char* config_path, const char* data_path,
                                  binreg_session** out) {
  if (config_path == nullptr || out == nullptr) {
    return fail(BINREG_E_INVALID_ARGUMENT, "config path and output must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<binreg_session>();
    s->config = binreg::load_config(config_path);
    if (data_path != nullptr) s->data = binreg::parse_csv(data_path, s->config);
    *out = s.release();
    return BINREG_OK;
  });
}

binreg_status binreg_session_open_text(const char* config_json, const char* csv_text,
                                       binreg_session** out) {
  if (config_json == nullptr || out == nullptr) {
    return fail(BINREG_E_INVALID_ARGUMENT, "config text and output must be non-NULL");
  }
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<binreg_session>();
    s->config = binreg::parse_config(config_json);
    if (csv_text != nullptr) s->data = binreg::parse_csv_text(csv_text, s->config);
    *out = s.release();
    return BINREG_OK;
  });
}

void binreg_session_free(binreg_session* session) { delete session; }

binreg_status binreg_session_set_max_iter(binreg_session* session, int max_iter) {
  if (session == nullptr || max_iter < 1) {
    return fail(BINREG_E_INVALID_ARGUMENT, "max_iter must be >= 1 on a valid session");
  }
  session->config.max_iter = max_iter;
  return BINREG_OK;
}

binreg_status binreg_session_set_seed(binreg_session* session, uint64_t seed) {
  if (session == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "session is NULL");
  session->config.seed = seed;
  return BINREG_OK;
}

binreg_status binreg_session_format(const binreg_session* session, binreg_format* out) {
  if (session == nullptr || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "NULL argument");
  *out = static_cast<binreg_format>(session->config.format);
  return BINREG_OK;
}

binreg_status binreg_session_seed(const binreg_session* session, int* has_seed, uint64_t* seed) {
  if (session == nullptr || has_seed == nullptr || seed == nullptr) {
    return fail(BINREG_E_INVALID_ARGUMENT, "NULL argument");
  }
  *has_seed = session->config.seed.has_value() ? 1 : 0;
  *seed = session->config.seed.value_or(0);
  return BINREG_OK;
}

binreg_status binreg_session_num_rows(const binreg_session* session, size_t* out) {
  if (const auto st = need_data(session); st != BINREG_OK) return st;
  if (out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "NULL output");
  *out = session->data->rows.size();
  return BINREG_OK;
}

binreg_status binreg_report_crosstab(const binreg_session* session, binreg_format format,
                                     char** out) {
  if (const auto st = need_data(session); st != BINREG_OK) return st;
  const auto fmt = to_format(format);
  if (!fmt || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "invalid format or NULL output");
  return guarded([&] {
    const auto rows = binreg::run_crosstab(session->config, *session->data);
    *out = copy_string(binreg::render_crosstab(rows, *fmt));
    return BINREG_OK;
  });
}

binreg_status binreg_report_fit(const binreg_session* session, binreg_format format, char** out) {
  if (const auto st = need_data(session); st != BINREG_OK) return st;
  const auto fmt = to_format(format);
  if (!fmt || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "invalid format or NULL output");
  return guarded([&] {
    const auto single = binreg::run_fit(session->config, *session->data);
    *out = copy_string(binreg::render_fit(single, *fmt));
    return BINREG_OK;
  });
}

binreg_status binreg_report_compare_links(const binreg_session* session, binreg_format format,
                                          char** out) {
  if (const auto st = need_data(session); st != BINREG_OK) return st;
  const auto fmt = to_format(format);
  if (!fmt || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "invalid format or NULL output");
  return guarded([&] {
    const auto report = binreg::run_compare_links(session->config, *session->data, true);
    *out = copy_string(binreg::render_comparison(report, *fmt));
    bool any = false;
    for (const auto& lf : report.fits) any = any || lf.result.has_value();
    if (!any) return fail(BINREG_E_NUMERICAL, "no link could be fitted: " + report.fits.front().error);
    return BINREG_OK;
  });
}

binreg_status binreg_simulate_csv(const binreg_session* session, const double* truth,
                                  size_t truth_len, size_t rows, size_t group_size, char** out) {
  if (session == nullptr || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "NULL argument");
  if (truth == nullptr && truth_len != 0) {
    return fail(BINREG_E_INVALID_ARGUMENT, "truth is NULL but truth_len is nonzero");
  }
  const auto& cfg = session->config;
  if (!cfg.seed) return fail(BINREG_E_INVALID_ARGUMENT, "simulate requires a seed");
  return guarded([&] {
    binreg::SimulationSpec spec = cfg.simulate.value_or(binreg::SimulationSpec{});
    if (truth != nullptr) spec.truth.assign(truth, truth + truth_len);
    if (rows != 0) spec.rows = rows;
    if (group_size != 0) spec.min_group = spec.max_group = group_size;
    if (spec.rows == 0) throw binreg::ValidationError("simulate: number of rows not set");
    const auto data = binreg::simulate(cfg.variables, spec, cfg.links.front(), *cfg.seed);
    *out = copy_string(binreg::dataset_to_csv(data, cfg.successes_column, cfg.trials_column));
    return BINREG_OK;
  });
}

binreg_status binreg_fit_create(const binreg_session* session, binreg_link link,
                                binreg_fit** out) {
  if (const auto st = need_data(session); st != BINREG_OK) return st;
  const auto kind = to_kind(link);
  if (!kind || out == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "invalid link or NULL output");
  *out = nullptr;
  return guarded([&] {
    const auto design = binreg::build_design(*session->data, session->config.variables);
    binreg::FitOptions opts;
    opts.max_iter = session->config.max_iter;
    auto f = std::make_unique<binreg_fit>();
    f->result = binreg::fit(design, session->data->successes(), session->data->trials(), *kind,
                            opts);
    *out = f.release();
    return BINREG_OK;
  });
}

void binreg_fit_free(binreg_fit* fit) { delete fit; }

size_t binreg_fit_num_coefficients(const binreg_fit* fit) {
  return fit == nullptr ? 0 : fit->result.coefficients.size();
}

const char* binreg_fit_term(const binreg_fit* fit, size_t j) {
  if (fit == nullptr || j >= fit->result.labels.size()) return nullptr;
  return fit->result.labels[j].c_str();
}

binreg_status binreg_fit_coefficient(const binreg_fit* fit, size_t j, double* estimate,
                                     double* std_error, double* p_value) {
  if (fit == nullptr || j >= fit->result.coefficients.size()) {
    return fail(BINREG_E_INVALID_ARGUMENT, "invalid fit handle or coefficient index");
  }
  if (estimate != nullptr) *estimate = fit->result.coefficients[j];
  if (std_error != nullptr) *std_error = fit->result.std_errors[j];
  if (p_value != nullptr) *p_value = fit->result.p_values[j];
  return BINREG_OK;
}

binreg_status binreg_fit_statistics(const binreg_fit* fit, double* log_likelihood,
                                    double* deviance, double* aic, int* iterations,
                                    int* converged) {
  if (fit == nullptr) return fail(BINREG_E_INVALID_ARGUMENT, "fit is NULL");
  const auto& r = fit->result;
  if (log_likelihood != nullptr) *log_likelihood = r.log_likelihood;
  if (deviance != nullptr) *deviance = r.deviance;
  if (aic != nullptr) *aic = r.aic;
  if (iterations != nullptr) *iterations = r.iterations;
  if (converged != nullptr) *converged = r.converged ? 1 : 0;
  return BINREG_OK;
}

}  // extern "C"
