#pragma once
#include <cstdint>
#include <vector>

#include "../family.hpp"
#include "../grid.hpp"
#include "../onsager.hpp"
#include "../rng.hpp"

namespace sglab {

struct TruncatedPartition {
  double value = 0.0;
  double last_term = 0.0;      // magnitude of the n_max contribution
  std::vector<double> terms;   // contribution of each order 0..n_max
};

// Grand-canonical series truncated at n_max particles:
//   Z = sum_n alpha_gas^n/n! sum_{signs} int exp(-beta^2 sum_{k<l} ll K_t) dmu^n
// Each order reduces to (2 alpha_gas)^n/n! times the order-n martingale
// moment, evaluated by tensor quadrature. Orders above 2 run on internally
// coarsened grids sized to the evaluation budget, so the series is a small-t
// diagnostic; the supplied grid is used directly for orders <= 2.
TruncatedPartition truncated_partition(const KernelFamily& fam,
                                       double alpha_gas, double beta, double t,
                                       int n_max, const Grid& grid,
                                       int workers = 0);

// Unordered-configuration log density of the gas measure, up to the partition
// constant: n ln(alpha_gas) + sum ln g(x_k) - beta^2 sum_{k<l} ll K_t.
double gas_log_pi(const KernelFamily& fam, double alpha_gas, double beta,
                  double t, const ChargeConfig& cfg);

// Log acceptance probabilities (<= 0) of the three chain moves, exposed so the
// pairwise balance identity can be checked against gas_log_pi directly.
double insert_log_accept(const KernelFamily& fam, double alpha_gas, double beta,
                         double t, const ChargeConfig& cfg, double x_new,
                         int sign_new);
double delete_log_accept(const KernelFamily& fam, double alpha_gas, double beta,
                         double t, const ChargeConfig& cfg, size_t index);
double displace_log_accept(const KernelFamily& fam, double beta, double t,
                           const ChargeConfig& cfg, size_t index, double x_new);

struct GasChainOptions {
  uint64_t seed = 1;
  size_t burn_in = 10000;
  size_t thinning = 10;
  double displace_sigma_frac = 0.05;  // Gaussian step, fraction of |I|
  double p_insert = 1.0 / 3.0, p_delete = 1.0 / 3.0;  // remainder displaces
};

struct MoveStats {
  size_t proposed = 0, accepted = 0;
};

// Metropolis chain over charge configurations with insert/delete/displace
// moves. Acceptance ratios carry the activity, count, and Boltzmann factors
// exactly; displaced positions reflect at the interval ends.
class GasChain {
 public:
  GasChain(const KernelFamily& fam, double alpha_gas, double beta, double t,
           const GasChainOptions& opts = {});

  void step();
  const ChargeConfig& current() const { return cfg_; }
  double energy() const { return H_; }  // beta^2 sum_{k<l} ll K_t
  size_t steps_taken() const { return steps_; }

  MoveStats insert_stats, delete_stats, displace_stats;

 private:
  double pair_energy(double x, int sgn, size_t skip) const;

  const KernelFamily* fam_;
  double alpha_, beta2_, t_, sigma_;
  double mass_ = 0.0;
  GasChainOptions opts_;
  RngStream rng_;
  ChargeConfig cfg_;
  double H_ = 0.0;
  size_t steps_ = 0;
};

struct GasRunResult {
  std::vector<ChargeConfig> samples;  // thinned, post burn-in
  std::vector<double> n_series;
  double mean_n = 0.0, mean_n_se = 0.0, tau_int = 0.0;
  MoveStats insert_stats, delete_stats, displace_stats;
  size_t steps = 0;
};

GasRunResult run_gas_chain(const KernelFamily& fam, double alpha_gas,
                           double beta, double t, size_t n_samples,
                           const GasChainOptions& opts = {},
                           bool keep_samples = true);

}  // namespace sglab
