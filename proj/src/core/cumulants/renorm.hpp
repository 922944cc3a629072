#pragma once
#include <cstdint>
#include <vector>
#include "../ensemble.hpp"
#include "quad.hpp"

namespace sglab {

struct RenormOptions {
  size_t replicas = 200000;
  uint64_t master_seed = 1;
  size_t block = 512;
  int workers = 0;
  int jk_blocks = 50;
};

struct RenormResult {
  double value = 0.0, se = 0.0;  // renormalized partition value
  double mean_exp = 0.0, mean_exp_se = 0.0;  // raw E[e^{alpha M_t}] estimate
  double counterterm_log = 0.0;  // sum_i alpha^{2i}/(2i)! C_{2i}(t)
  int counterterms = 0;
  std::vector<double> c_even;  // the subtracted even cumulants C_2, C_4, ...
};

// Z-bar = E[e^{alpha M_t}] exp(-sum_{i=1}^{n-1} alpha^{2i}/(2i)! C_{2i}(t)),
// with n from the threshold index of beta. The expectation is Monte Carlo
// over streamed replicas; the counterterm cumulants come from tensor
// quadrature on the same grid, so the subtraction matches the discretized
// observable rather than the continuum one.
RenormResult renormalized_partition(const KernelFamily& fam, double alpha,
                                    double beta, double t, const Grid& grid,
                                    const RenormOptions& opts = {});

// Per-replica real martingale values at depth t, streamed with a single slab
// factorization (shared by the partition flow and the MGF convexity checks).
std::vector<double> stream_martingale_values(const KernelFamily& fam,
                                             const Grid& grid, double beta,
                                             double t, size_t replicas,
                                             uint64_t master_seed,
                                             size_t block = 512,
                                             int workers = 0);

// renormalized_partition at every cutoff of t_list in one telescoping stream,
// so all levels share replicas and cutoff-to-cutoff changes are low-noise
std::vector<RenormResult> renorm_flow(const KernelFamily& fam, double alpha,
                                      double beta,
                                      const std::vector<double>& t_list,
                                      const Grid& grid,
                                      const RenormOptions& opts = {});

}  // namespace sglab
