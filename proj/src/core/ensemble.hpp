#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>
#include <Eigen/Dense>
#include "family.hpp"
#include "grid.hpp"

namespace sglab {

// Covariance of one field slab on a grid together with a lower-triangular
// factor usable for sampling. cov[i][j] = K_{t_hi}(x_i,x_j) - K_{t_lo}(x_i,x_j).
struct SlabCovariance {
  double t_lo = 0.0, t_hi = 0.0;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd factor;  // lower triangular, factor factor^T = cov + jitter
  double jitter = 0.0;     // relative diagonal jitter actually applied
};

// Factorization applies relative diagonal jitter 1e-10, escalating by x10 up
// to 1e-6; past that the slab is reported unusable.
SlabCovariance slab_covariance(const KernelFamily& fam, const Grid& grid,
                               double t_lo, double t_hi, int workers = 0);

struct StreamOptions {
  size_t block = 512;  // replicas per block; fixed so results never depend on
                       // the worker count, only on (master_seed, replica)
  int workers = 0;
};

// Streams cumulative field values block by block without retaining them.
// sink(k, r0, X): column c of the grid-by-block matrix X holds
// X_{t_{k+1}}(x_i) for replica r0+c. Called once per (block, slab level), from
// worker threads; calls for distinct blocks may be concurrent, so sinks must
// write only to per-replica slots or do their own ordered combine.
void for_each_field_block(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, const StreamOptions& opts,
    const std::function<void(size_t k, size_t r0, const Eigen::MatrixXd& X)>&
        sink);

// Replicated layered samples of the field held in memory (moderate sizes;
// the streaming interface above covers anything bigger).
struct FieldEnsemble {
  Grid grid;
  std::vector<double> cutoffs;  // t_1 < ... < t_K, with t_0 = 0 implicit
  size_t replicas = 0;
  uint64_t master_seed = 0;
  // values[k][r*G + i] = X_{t_{k+1}}(x_i) for replica r
  std::vector<std::vector<double>> values;

  size_t levels() const { return cutoffs.size(); }
  const double* replica(size_t k, size_t r) const {
    return values[k].data() + r * grid.size();
  }
};

FieldEnsemble sample_ensemble(const KernelFamily& fam, const Grid& grid,
                              const std::vector<double>& slab_times,
                              size_t replicas, uint64_t master_seed,
                              const StreamOptions& opts = {});

// Per-replica observable sum_i w_i cos(beta X(x_i) + phi_i + i psi_i)
// * e^{beta^2 t/2} for one block of field columns (the diagonal kernel value
// K_t(x,x) is t exactly because seed profiles are normalized to Q(0)=1).
// phi/psi empty means identically zero. out must hold X.cols() values.
void martingale_block(const Eigen::Ref<const Eigen::MatrixXd>& X,
                      const Grid& grid, double t, double beta,
                      const std::vector<double>& phi,
                      const std::vector<double>& psi,
                      std::complex<double>* out);

std::vector<std::complex<double>> evaluate_martingale(
    const FieldEnsemble& ens, double beta, size_t slab_index,
    const std::vector<double>& phi = {}, const std::vector<double>& psi = {});

}  // namespace sglab
