#include "sglab.h"

#include <cmath>
#include <cstring>
#include <string>

#include "core/cumulants/thresholds.hpp"
#include "core/errors.hpp"
#include "run/config.hpp"
#include "run/runner.hpp"

namespace {

thread_local std::string g_last_error;

int fail(const std::exception& e) {
  g_last_error = e.what();
  return sglab::exit_code_for(e);
}

template <class F>
int guarded(F&& f) {
  try {
    f();
    return SGLAB_OK;
  } catch (const std::exception& e) {
    return fail(e);
  } catch (...) {
    g_last_error = "unknown failure";
    return SGLAB_ERR_NUMERICAL;
  }
}

}  // namespace

struct sglab_config_s {
  sglab::ExperimentConfig cfg;
};

struct sglab_result_s {
  sglab::RunResult res;
};

extern "C" {

const char* sglab_version(void) { return sglab::library_version(); }

const char* sglab_last_error(void) { return g_last_error.c_str(); }

int sglab_config_parse(const char* json_text, sglab_config** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  *out = nullptr;
  return guarded([&] {
    auto* h = new sglab_config_s{sglab::parse_config(json_text)};
    *out = h;
  });
}

int sglab_config_set_seed(sglab_config* cfg, uint64_t master_seed) {
  if (!cfg) {
    g_last_error = "null config";
    return SGLAB_ERR_CONFIG;
  }
  cfg->cfg.master_seed = master_seed;
  return SGLAB_OK;
}

int sglab_config_set_workers(sglab_config* cfg, int workers) {
  if (!cfg) {
    g_last_error = "null config";
    return SGLAB_ERR_CONFIG;
  }
  if (workers < 0 || workers > 256) {
    g_last_error = "execution.workers must be in [0, 256]";
    return SGLAB_ERR_CONFIG;
  }
  cfg->cfg.workers = workers;
  return SGLAB_OK;
}

int sglab_config_set_out_dir(sglab_config* cfg, const char* dir) {
  if (!cfg || !dir) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  cfg->cfg.out_dir = dir;
  return SGLAB_OK;
}

const char* sglab_config_out_dir(const sglab_config* cfg) {
  return cfg ? cfg->cfg.out_dir.c_str() : "";
}

int sglab_config_hash(const sglab_config* cfg, char* buf, size_t buflen) {
  if (!cfg || !buf) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  return guarded([&] {
    std::string h = sglab::config_hash(cfg->cfg);
    if (buflen < h.size() + 1)
      throw sglab::ConfigError("hash buffer too small (need 17 bytes)");
    std::memcpy(buf, h.c_str(), h.size() + 1);
  });
}

void sglab_config_free(sglab_config* cfg) { delete cfg; }

int sglab_run(const sglab_config* cfg, const char* command,
              sglab_result** out) {
  if (!cfg || !command || !out) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  *out = nullptr;
  return guarded([&] {
    auto* h = new sglab_result_s{sglab::run_command(cfg->cfg, command)};
    *out = h;
  });
}

size_t sglab_result_artifact_count(const sglab_result* res) {
  return res ? res->res.artifacts.size() : 0;
}

const char* sglab_result_artifact_name(const sglab_result* res, size_t index) {
  if (!res || index >= res->res.artifacts.size()) return "";
  return res->res.artifacts[index].filename.c_str();
}

const char* sglab_result_artifact_content(const sglab_result* res,
                                          size_t index) {
  if (!res || index >= res->res.artifacts.size()) return "";
  return res->res.artifacts[index].content.c_str();
}

const char* sglab_result_summary(const sglab_result* res) {
  return res ? res->res.summary.c_str() : "";
}

int sglab_result_write(const sglab_result* res, const char* dir) {
  if (!res || !dir) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  return guarded([&] { sglab::write_artifacts(res->res, dir); });
}

void sglab_result_free(sglab_result* res) { delete res; }

int sglab_threshold_index(double beta, int* index, int* counterterms) {
  if (!index || !counterterms) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  return guarded([&] {
    auto th = sglab::threshold_index(beta);
    *index = th.index;
    *counterterms = th.counterterms;
  });
}

int sglab_collapse_threshold(int n, double* beta_n) {
  if (!beta_n) {
    g_last_error = "null argument";
    return SGLAB_ERR_CONFIG;
  }
  if (n < 1) {
    g_last_error = "threshold index must be >= 1";
    return SGLAB_ERR_CONFIG;
  }
  *beta_n = std::sqrt(2.0 * (1.0 - 1.0 / (2.0 * n)));
  return SGLAB_OK;
}

}  // extern "C"
