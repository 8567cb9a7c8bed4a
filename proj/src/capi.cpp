#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "bicomm.h"
#include "bicomm/bmo.hpp"
#include "bicomm/commutator.hpp"
#include "bicomm/error.hpp"
#include "bicomm/experiments.hpp"
#include "bicomm/io.hpp"

struct bicomm_config {
  bicomm::experiments::ExperimentConfig value;
};

struct bicomm_report {
  bicomm::experiments::Report value;
  std::string csv;
};

struct bicomm_signal {
  bicomm::GridSignal2D value;
};

namespace {

thread_local std::string last_error;

bicomm_status status_of(bicomm::ErrorCode code) {
  switch (code) {
    case bicomm::ErrorCode::invalid_argument: return BICOMM_ERR_INVALID_ARGUMENT;
    case bicomm::ErrorCode::dimension_mismatch: return BICOMM_ERR_DIMENSION_MISMATCH;
    case bicomm::ErrorCode::domain_violation: return BICOMM_ERR_DOMAIN;
    case bicomm::ErrorCode::not_converged: return BICOMM_ERR_NOT_CONVERGED;
    case bicomm::ErrorCode::io: return BICOMM_ERR_IO;
    case bicomm::ErrorCode::config: return BICOMM_ERR_CONFIG;
  }
  return BICOMM_ERR_INTERNAL;
}

template <class F>
bicomm_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return BICOMM_OK;
  } catch (const bicomm::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return BICOMM_ERR_INTERNAL;
}

bicomm_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return BICOMM_ERR_INVALID_ARGUMENT;
}

bicomm::experiments::ExperimentConfig config_from_text(const std::string& text, const char* command) {
  using bicomm::io::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bicomm::fail(bicomm::ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bicomm::fail(bicomm::ErrorCode::config, "config must be a JSON object");
  if (command) {
    if (!j.contains("command")) j["command"] = command;
    else if (!j["command"].is_string() || j["command"].get<std::string>() != command)
      bicomm::fail(bicomm::ErrorCode::config, std::string("config is for a different command than '") + command + "'");
  }
  return bicomm::experiments::parse_config(j);
}

}  // namespace

extern "C" {

const char* bicomm_version(void) { return bicomm::experiments::code_version(); }

const char* bicomm_last_error(void) { return last_error.c_str(); }

size_t bicomm_command_count(void) { return bicomm::experiments::command_names().size(); }

const char* bicomm_command_name(size_t index) {
  const auto& names = bicomm::experiments::command_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

bicomm_status bicomm_config_load(const char* path, const char* command, bicomm_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new bicomm_config{config_from_text(bicomm::io::read_text(path), command)}; });
}

bicomm_status bicomm_config_parse(const char* json, const char* command, bicomm_config** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new bicomm_config{config_from_text(json, command)}; });
}

void bicomm_config_free(bicomm_config* config) { delete config; }

bicomm_status bicomm_config_set_seed(bicomm_config* config, uint64_t seed) {
  if (!config) return null_argument("config");
  config->value.seed = seed;
  return BICOMM_OK;
}

bicomm_status bicomm_config_set_jobs(bicomm_config* config, int jobs) {
  if (!config) return null_argument("config");
  if (jobs < 1) {
    last_error = "jobs must be at least 1";
    return BICOMM_ERR_CONFIG;
  }
  config->value.jobs = jobs;
  return BICOMM_OK;
}

bicomm_status bicomm_config_set_out_dir(bicomm_config* config, const char* dir) {
  if (!config) return null_argument("config");
  if (!dir) return null_argument("dir");
  config->value.out_dir = dir;
  return BICOMM_OK;
}

bicomm_status bicomm_config_hash(const bicomm_config* config, char* buffer, size_t size) {
  if (!config) return null_argument("config");
  if (!buffer) return null_argument("buffer");
  return guarded([&] {
    const auto h = bicomm::experiments::config_hash(config->value);
    if (size < h.size() + 1) bicomm::fail(bicomm::ErrorCode::invalid_argument, "hash buffer too small");
    std::memcpy(buffer, h.c_str(), h.size() + 1);
  });
}

const char* bicomm_config_command(const bicomm_config* config) {
  return config ? config->value.command.c_str() : nullptr;
}

bicomm_status bicomm_run(const bicomm_config* config, bicomm_report** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto report = bicomm::experiments::run(config->value);
    auto* r = new bicomm_report{std::move(report), {}};
    r->csv = r->value.table.str();
    *out = r;
  });
}

void bicomm_report_free(bicomm_report* report) { delete report; }

bicomm_status bicomm_report_write(const bicomm_report* report, const bicomm_config* config) {
  if (!report) return null_argument("report");
  if (!config) return null_argument("config");
  return guarded([&] { bicomm::experiments::write_report(report->value, config->value); });
}

const char* bicomm_report_csv(const bicomm_report* report) { return report ? report->csv.c_str() : nullptr; }

size_t bicomm_report_rows(const bicomm_report* report) { return report ? report->value.table.size() : 0; }

int bicomm_report_passed(const bicomm_report* report) { return report && report->value.passed() ? 1 : 0; }

double bicomm_report_runtime(const bicomm_report* report) { return report ? report->value.runtime_seconds : 0.0; }

size_t bicomm_report_check_count(const bicomm_report* report) { return report ? report->value.checks.size() : 0; }

bicomm_status bicomm_report_check(const bicomm_report* report, size_t index, const char** name, const char** relation,
                                  double* value, double* limit, int* passed) {
  if (!report) return null_argument("report");
  if (index >= report->value.checks.size()) {
    last_error = "check index out of range";
    return BICOMM_ERR_INVALID_ARGUMENT;
  }
  const auto& c = report->value.checks[index];
  if (name) *name = c.name.c_str();
  if (relation) *relation = c.relation.c_str();
  if (value) *value = c.value;
  if (limit) *limit = c.limit;
  if (passed) *passed = c.passed ? 1 : 0;
  return BICOMM_OK;
}

bicomm_status bicomm_signal_create(size_t n, const double* interleaved, bicomm_signal** out) {
  if (!interleaved) return null_argument("interleaved");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    std::vector<bicomm::Complex> v(n * n);
    for (size_t i = 0; i < v.size(); ++i) v[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    *out = new bicomm_signal{bicomm::GridSignal2D(n, std::move(v))};
  });
}

bicomm_status bicomm_signal_read(const char* base, bicomm_signal** out) {
  if (!base) return null_argument("base");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new bicomm_signal{bicomm::io::read_signal_2d(base)}; });
}

bicomm_status bicomm_signal_write(const bicomm_signal* signal, const char* base) {
  if (!signal) return null_argument("signal");
  if (!base) return null_argument("base");
  return guarded([&] { bicomm::io::write_signal(base, signal->value); });
}

size_t bicomm_signal_size(const bicomm_signal* signal) { return signal ? signal->value.size() : 0; }

void bicomm_signal_free(bicomm_signal* signal) { delete signal; }

bicomm_status bicomm_operator_norm(const bicomm_signal* signal, double tol, int max_iter, uint64_t seed, double* norm) {
  if (!signal) return null_argument("signal");
  if (!norm) return null_argument("norm");
  return guarded([&] { *norm = bicomm::operator_norm(signal->value, tol, max_iter, seed).norm; });
}

bicomm_status bicomm_product_bmo_lower(const bicomm_signal* signal, int resolution, int budget, double* value) {
  if (!signal) return null_argument("signal");
  if (!value) return null_argument("value");
  return guarded([&] {
    const auto c = bicomm::analyze(signal->value, resolution);
    *value = bicomm::product_bmo_lower(c, {budget, true}).value;
  });
}

}  // extern "C"
