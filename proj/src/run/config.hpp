#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../core/family.hpp"
#include "../core/grid.hpp"
#include "../core/loggas/duality.hpp"

namespace sglab {

// Parsed experiment description. Activities are stored in the gas convention;
// alpha_library() converts. Unknown keys anywhere in the input are rejected.
struct ExperimentConfig {
  // geometry
  double a = 0.0, b = 1.0;
  bool uniform_density = true;
  std::vector<double> density_x, density_g;

  // seed kernel
  SeedProfile seed{SeedKind::Gaussian};

  // model
  double beta = 1.0;
  std::optional<double> activity_gas;  // set via alpha_gas or alpha_library
  struct ThetaSpec {
    std::string kind = "none";  // none | sine | constant | tabulated
    double amplitude = 0.0;     // sine amplitude / constant value
    double frequency = 1.0;     // sine cycles across the interval
    int nodes = 129;
    std::vector<double> x, values;  // tabulated
  } theta;
  std::vector<double> insertion_z, insertion_eta;

  // numerics
  int grid_points = 256;
  std::vector<double> t_grid = {1.0, 2.0, 3.0, 4.0};
  size_t replicas = 100000;
  int quadrature_order = 8;
  int n_max = 8;
  int order_max = 2;
  std::string engine = "resolved";  // resolved | tensor
  int charges = 5;
  std::string charge_class = "unconditioned";  // neutral|non-neutral|unconditioned|dipole
  double dipole_gamma = 0.5;
  double start_scale = 0.0;
  size_t samples = 20000;
  struct Mcmc {
    size_t burn_in = 10000;
    size_t thinning = 10;
    double displace_sigma = 0.05;
    bool persist_samples = false;
  } mcmc;

  // execution
  uint64_t master_seed = 1;
  int workers = 0;

  // output
  std::string out_dir = "out";
  bool csv = true, json = false;

  double alpha_gas() const;      // error when absent
  double alpha_library() const;  // 2 * alpha_gas
  bool has_activity() const { return activity_gas.has_value(); }

  KernelFamily family() const;
  Grid grid() const;
  TestFunction test_function() const;  // zero when kind == none
};

ExperimentConfig parse_config(const std::string& json_text);

// canonical serialized form used for hashing: defaults materialized, activity
// in the gas convention, worker count and output section excluded
std::string canonical_config(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);  // 64-bit FNV-1a, hex

const char* library_version();

}  // namespace sglab
