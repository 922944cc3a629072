#include "ensemble.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace sglab {

SlabCovariance slab_covariance(const KernelFamily& fam, const Grid& grid,
                               double t_lo, double t_hi, int workers) {
  if (t_lo < 0 || t_hi < t_lo)
    throw ConfigError("slab_covariance: need 0 <= t_lo <= t_hi");
  int G = (int)grid.size();
  SlabCovariance out;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  out.cov.setZero(G, G);
  out.factor.setZero(G, G);
  if (t_hi == t_lo) return out;  // degenerate slab: zero field increment

  // entries as differences of the cumulative kernel, so consecutive slabs
  // telescope exactly to K_t on the grid
  parallel_for_tasks(G, workers, [&](int i) {
    double xi = grid.x[(size_t)i];
    for (int j = i; j < G; j++) {
      double v = fam.k(t_hi, xi, grid.x[(size_t)j]) -
                 (t_lo > 0 ? fam.k(t_lo, xi, grid.x[(size_t)j]) : 0.0);
      out.cov(i, j) = v;
      out.cov(j, i) = v;
    }
  });

  double scale = out.cov.diagonal().maxCoeff();
  if (!(scale > 0)) scale = 1.0;
  for (double jit = 1e-10; jit <= 1.0000001e-6; jit *= 10.0) {
    Eigen::MatrixXd jc = out.cov;
    jc.diagonal().array() += jit * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(jc);
    if (llt.info() == Eigen::Success) {
      out.factor = llt.matrixL();
      out.jitter = jit;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "covariance factorization failed for slab [" << t_lo << ", " << t_hi
      << "] after jitter escalation to 1e-6";
  throw NumericalError(msg.str());
}

static std::vector<double> clean_slab_times(const std::vector<double>& ts) {
  std::vector<double> out;
  out.push_back(0.0);
  for (double t : ts) {
    if (t == 0.0 && out.size() == 1) continue;  // leading zero is implicit
    if (t <= out.back())
      throw ConfigError("slab times must increase strictly from 0");
    out.push_back(t);
  }
  if (out.size() < 2) throw ConfigError("need at least one slab");
  return out;
}

void for_each_field_block(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, const StreamOptions& opts,
    const std::function<void(size_t k, size_t r0, const Eigen::MatrixXd& X)>&
        sink) {
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  size_t block = opts.block ? opts.block : 512;
  auto times = clean_slab_times(slab_times);
  size_t K = times.size() - 1;
  int G = (int)grid.size();

  std::vector<SlabCovariance> slabs;
  slabs.reserve(K);
  for (size_t k = 0; k < K; k++)
    slabs.push_back(
        slab_covariance(fam, grid, times[k], times[k + 1], opts.workers));

  size_t nblocks = (replicas + block - 1) / block;
  parallel_for_tasks((int)nblocks, opts.workers, [&](int bi) {
    size_t r0 = (size_t)bi * block;
    size_t B = std::min(block, replicas - r0);
    Eigen::MatrixXd Z(G, (Eigen::Index)B), X(G, (Eigen::Index)B);
    X.setZero();
    for (size_t k = 0; k < K; k++) {
      for (size_t c = 0; c < B; c++) {
        RngStream st(master_seed, r0 + c, k);
        double* col = Z.col((Eigen::Index)c).data();
        for (int i = 0; i < G; i++) col[i] = st.normal();
      }
      X.noalias() += slabs[k].factor.triangularView<Eigen::Lower>() * Z;
      sink(k, r0, X);
    }
  });
}

FieldEnsemble sample_ensemble(const KernelFamily& fam, const Grid& grid,
                              const std::vector<double>& slab_times,
                              size_t replicas, uint64_t master_seed,
                              const StreamOptions& opts) {
  auto times = clean_slab_times(slab_times);
  size_t K = times.size() - 1, G = grid.size();
  double bytes = (double)replicas * (double)K * (double)G * 8.0;
  if (bytes > 2e9)
    throw ResourceError(
        "stored ensemble exceeds 2 GB; use the streaming interface");

  FieldEnsemble ens;
  ens.grid = grid;
  ens.cutoffs.assign(times.begin() + 1, times.end());
  ens.replicas = replicas;
  ens.master_seed = master_seed;
  ens.values.assign(K, std::vector<double>(replicas * G));

  for_each_field_block(fam, grid, slab_times, replicas, master_seed, opts,
                       [&](size_t k, size_t r0, const Eigen::MatrixXd& X) {
                         for (Eigen::Index c = 0; c < X.cols(); c++)
                           std::memcpy(
                               ens.values[k].data() + (r0 + (size_t)c) * G,
                               X.col(c).data(), G * sizeof(double));
                       });
  return ens;
}

void martingale_block(const Eigen::Ref<const Eigen::MatrixXd>& X,
                      const Grid& grid, double t, double beta,
                      const std::vector<double>& phi,
                      const std::vector<double>& psi,
                      std::complex<double>* out) {
  int G = (int)grid.size();
  double amp = std::exp(0.5 * beta * beta * t);
  bool has_phi = !phi.empty(), has_psi = !psi.empty();
  if ((has_phi && (int)phi.size() != G) || (has_psi && (int)psi.size() != G))
    throw ConfigError("phase vector size does not match the grid");
  for (Eigen::Index c = 0; c < X.cols(); c++) {
    const double* col = X.col(c).data();
    double re = 0.0, im = 0.0;
    if (!has_psi) {
      for (int i = 0; i < G; i++) {
        double a = beta * col[i] + (has_phi ? phi[(size_t)i] : 0.0);
        re += grid.w[(size_t)i] * std::cos(a);
      }
    } else {
      // cos(a + i b) = cos a cosh b - i sin a sinh b
      for (int i = 0; i < G; i++) {
        double a = beta * col[i] + (has_phi ? phi[(size_t)i] : 0.0);
        double b = psi[(size_t)i];
        re += grid.w[(size_t)i] * std::cos(a) * std::cosh(b);
        im -= grid.w[(size_t)i] * std::sin(a) * std::sinh(b);
      }
    }
    out[c] = std::complex<double>(re * amp, im * amp);
    if (!std::isfinite(re) || !std::isfinite(im))
      throw NumericalError("non-finite martingale value");
  }
}

std::vector<std::complex<double>> evaluate_martingale(
    const FieldEnsemble& ens, double beta, size_t slab_index,
    const std::vector<double>& phi, const std::vector<double>& psi) {
  if (slab_index >= ens.levels()) throw ConfigError("slab index out of range");
  if (!(beta > 0)) throw ConfigError("beta must be positive");
  size_t G = ens.grid.size();
  double t = ens.cutoffs[slab_index];
  std::vector<std::complex<double>> out(ens.replicas);
  // reuse the block evaluator on a view of the stored values
  Eigen::Map<const Eigen::MatrixXd> all(ens.values[slab_index].data(),
                                        (Eigen::Index)G,
                                        (Eigen::Index)ens.replicas);
  martingale_block(all, ens.grid, t, beta, phi, psi, out.data());
  return out;
}

}  // namespace sglab
