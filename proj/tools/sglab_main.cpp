// Command-line front end. All work happens behind the C API in sglab.h; this
// file only handles flags, file reading, and exit codes.
#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sglab.h>

int main(int argc, char** argv) {
  CLI::App app{"boundary sine-Gordon field / log-gas laboratory"};
  app.set_version_flag("--version", sglab_version());

  std::string command, config_path, out_dir;
  uint64_t seed = 0;
  int workers = 0;

  app.add_option("command", command,
                 "validate-kernel | cumulants | renorm-flow | onsager-audit | "
                 "gibbs | fourier-duality | correlations | bracket-scan")
      ->required();
  app.add_option("--config", config_path, "experiment config file (JSON)")
      ->required();
  auto* seed_opt = app.add_option("--seed", seed, "master seed override");
  auto* workers_opt =
      app.add_option("--workers", workers, "worker pool size override");
  auto* out_opt = app.add_option(
      "--out", out_dir, "output directory (overrides SGLAB_OUT and config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; usage problems are
                               // config errors
  }

  std::ifstream f(config_path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot read config file %s\n",
                 config_path.c_str());
    return 2;
  }
  std::ostringstream ss;
  ss << f.rdbuf();

  sglab_config* cfg = nullptr;
  int rc = sglab_config_parse(ss.str().c_str(), &cfg);
  if (rc != SGLAB_OK) {
    std::fprintf(stderr, "error: %s\n", sglab_last_error());
    return rc;
  }

  if (seed_opt->count()) sglab_config_set_seed(cfg, seed);
  if (workers_opt->count()) {
    rc = sglab_config_set_workers(cfg, workers);
    if (rc != SGLAB_OK) {
      std::fprintf(stderr, "error: %s\n", sglab_last_error());
      sglab_config_free(cfg);
      return rc;
    }
  }
  const char* env_out = std::getenv("SGLAB_OUT");
  if (out_opt->count())
    sglab_config_set_out_dir(cfg, out_dir.c_str());
  else if (env_out && *env_out)
    sglab_config_set_out_dir(cfg, env_out);

  sglab_result* res = nullptr;
  rc = sglab_run(cfg, command.c_str(), &res);
  if (rc != SGLAB_OK) {
    std::fprintf(stderr, "error: %s\n", sglab_last_error());
    sglab_config_free(cfg);
    return rc;
  }

  rc = sglab_result_write(res, sglab_config_out_dir(cfg));
  if (rc != SGLAB_OK) {
    std::fprintf(stderr, "error: %s\n", sglab_last_error());
    sglab_result_free(res);
    sglab_config_free(cfg);
    return rc;
  }

  std::fputs(sglab_result_summary(res), stdout);
  sglab_result_free(res);
  sglab_config_free(cfg);
  return 0;
}
