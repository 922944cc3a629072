#include "duality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "../errors.hpp"
#include "../stats.hpp"

namespace sglab {

namespace {

// strictly increasing positive cutoffs; one leading zero tolerated
std::vector<double> sweep_cutoffs(const std::vector<double>& slab_times) {
  std::vector<double> out;
  double prev = 0.0;
  for (size_t i = 0; i < slab_times.size(); ++i) {
    double t = slab_times[i];
    if (t == 0.0 && i == 0) continue;
    if (t <= prev) throw ConfigError("slab times must increase strictly from 0");
    out.push_back(t);
    prev = t;
  }
  if (out.empty()) throw ConfigError("need at least one slab");
  return out;
}

void check_ratio_denominator(const std::vector<std::complex<double>>& den) {
  auto dm = complex_mean_se(den, 50);
  if (std::abs(dm.mean) <= 3.0 * std::hypot(dm.se_re, dm.se_im))
    throw NumericalError("ratio denominator is consistent with zero");
}

RatioResult ratio_from_series(const std::vector<std::complex<double>>& num,
                              const std::vector<std::complex<double>>& den) {
  check_ratio_denominator(den);
  auto r = complex_ratio_se(num, den, 50);
  return {r.mean, r.se_re, r.se_im, r.n};
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

}  // namespace

TestFunction::TestFunction(std::vector<double> xs, std::vector<double> vals)
    : xs_(std::move(xs)), vals_(std::move(vals)) {
  if (xs_.size() != vals_.size())
    throw ConfigError("test function nodes and values must align");
  if (xs_.size() < 2) throw ConfigError("test function needs at least 2 nodes");
  for (size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw ConfigError("test function nodes must increase strictly");
}

double TestFunction::operator()(double x) const {
  if (xs_.empty()) return 0.0;
  if (x <= xs_.front()) return vals_.front();
  if (x >= xs_.back()) return vals_.back();
  size_t hi = static_cast<size_t>(
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  size_t lo = hi - 1;
  double f = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return vals_[lo] + f * (vals_[hi] - vals_[lo]);
}

double TestFunction::holder_half_norm() const {
  if (xs_.empty()) return 0.0;
  if (xs_.size() > 512)
    throw ResourceError("norm scan over node pairs is limited to 512 nodes");
  double sup = 0.0;
  for (double v : vals_) sup = std::max(sup, std::abs(v));
  double quot = 0.0;
  for (size_t i = 0; i < xs_.size(); ++i)
    for (size_t j = i + 1; j < xs_.size(); ++j)
      quot = std::max(quot, std::abs(vals_[j] - vals_[i]) /
                                std::sqrt(xs_[j] - xs_[i]));
  return sup + quot;
}

std::vector<double> TestFunction::on_grid(const Grid& grid) const {
  if (zero()) return {};
  std::vector<double> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.x[i]);
  return out;
}

ComplexMeanSE charge_fourier(const std::vector<ChargeConfig>& samples,
                             const TestFunction& theta, int nblocks) {
  if (samples.empty()) throw ConfigError("charge Fourier mean needs samples");
  std::vector<std::complex<double>> vals(samples.size());
  for (size_t r = 0; r < samples.size(); ++r) {
    double s = 0.0;
    const ChargeConfig& c = samples[r];
    for (size_t k = 0; k < c.size(); ++k) s += c.sign[k] * theta(c.pos[k]);
    vals[r] = std::polar(1.0, s);
  }
  return complex_mean_se(vals, nblocks);
}

RatioResult sg_ratio(const FieldEnsemble& ens, double alpha_library,
                     double beta, size_t slab_index,
                     const TestFunction& theta) {
  auto base = evaluate_martingale(ens, beta, slab_index);
  auto shifted =
      evaluate_martingale(ens, beta, slab_index, theta.on_grid(ens.grid));
  std::vector<std::complex<double>> num(base.size()), den(base.size());
  for (size_t r = 0; r < base.size(); ++r) {
    num[r] = std::exp(alpha_library * shifted[r]);
    den[r] = std::exp(alpha_library * base[r]);
  }
  return ratio_from_series(num, den);
}

ExpMartingaleSweep stream_exp_martingale(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha, double beta,
    const std::vector<PhaseSweep>& variants, const StreamOptions& opts) {
  if (replicas == 0) throw ConfigError("sweep needs at least one replica");
  ExpMartingaleSweep out;
  out.cutoffs = sweep_cutoffs(slab_times);
  const size_t K = out.cutoffs.size(), V = variants.size() + 1;
  for (const auto& ph : variants)
    if (ph.size() != 1 && ph.size() != K)
      throw ConfigError("phase variant must give one entry or one per level");

  double bytes = static_cast<double>(V) * static_cast<double>(K) *
                 static_cast<double>(replicas) * 16.0;
  if (bytes > 2e9)
    throw ResourceError("sweep storage exceeds 2 GB; reduce replicas or levels");

  out.vals.assign(V, std::vector<std::vector<std::complex<double>>>(
                         K, std::vector<std::complex<double>>(replicas)));

  static const std::vector<double> kNoShift;
  for_each_field_block(
      fam, grid, slab_times, replicas, master_seed, opts,
      [&](size_t k, size_t r0, const Eigen::MatrixXd& X) {
        const size_t B = static_cast<size_t>(X.cols());
        std::vector<std::complex<double>> tmp(B);
        for (size_t v = 0; v < V; ++v) {
          const std::vector<double>* phi = &kNoShift;
          const std::vector<double>* psi = &kNoShift;
          if (v > 0) {
            const PhaseSweep& ph = variants[v - 1];
            const PhasePair& pp = ph.size() == 1 ? ph[0] : ph[k];
            phi = &pp.phi;
            psi = &pp.psi;
          }
          martingale_block(X, grid, out.cutoffs[k], beta, *phi, *psi,
                           tmp.data());
          for (size_t c = 0; c < B; ++c)
            out.vals[v][k][r0 + c] = std::exp(alpha * tmp[c]);
        }
      });
  return out;
}

std::vector<RatioResult> sg_ratio_sweep(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha_library, double beta,
    const TestFunction& theta, const StreamOptions& opts) {
  PhaseSweep shift(1);
  shift[0].phi = theta.on_grid(grid);
  auto sweep = stream_exp_martingale(fam, grid, slab_times, replicas,
                                     master_seed, alpha_library, beta, {shift},
                                     opts);
  std::vector<RatioResult> out;
  out.reserve(sweep.cutoffs.size());
  for (size_t k = 0; k < sweep.cutoffs.size(); ++k)
    out.push_back(ratio_from_series(sweep.vals[1][k], sweep.vals[0][k]));
  return out;
}

namespace {

// imaginary shift psi(x_i) = beta^2 sum_l eta_l K_t(x_i, z_l); empty when the
// charges vanish so the exact no-shift path is taken
std::vector<double> insertion_shift(const KernelFamily& fam, const Grid& grid,
                                    double beta, double t,
                                    const std::vector<double>& z,
                                    const std::vector<double>& eta) {
  if (all_zero(eta)) return {};
  std::vector<double> psi(grid.size(), 0.0);
  for (size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (size_t l = 0; l < z.size(); ++l)
      s += eta[l] * fam.k(t, grid.x[i], z[l]);
    psi[i] = beta * beta * s;
  }
  return psi;
}

double insertion_prefactor_log(const KernelFamily& fam, double beta, double t,
                               const std::vector<double>& z,
                               const std::vector<double>& eta) {
  double s = 0.0;
  for (size_t l = 0; l < z.size(); ++l)
    for (size_t m = l + 1; m < z.size(); ++m)
      s += eta[l] * eta[m] * fam.k(t, z[l], z[m]);
  return -beta * beta * s;
}

void check_insertions(const KernelFamily& fam, const std::vector<double>& z,
                      const std::vector<double>& eta) {
  if (z.size() != eta.size())
    throw ConfigError("insertion points and charges must align");
  for (size_t l = 0; l < z.size(); ++l) {
    if (z[l] < fam.a() || z[l] > fam.b())
      throw ConfigError("insertion points must lie inside the interval");
    for (size_t m = l + 1; m < z.size(); ++m)
      if (z[l] == z[m])
        throw ConfigError("coincident insertion points are not defined");
  }
}

bool strong_charge(double beta, const std::vector<double>& eta) {
  double mx = 0.0;
  for (double e : eta) mx = std::max(mx, std::abs(e));
  return (1.0 + 2.0 * mx) * beta * beta >= 2.0;
}

CorrelationResult finish_correlation(const RatioResult& r, double lpref,
                                     bool flagged) {
  CorrelationResult out;
  out.ratio = r.value;
  out.prefactor = std::exp(lpref);
  out.value = out.prefactor * r.value;
  out.se_re = out.prefactor * r.se_re;
  out.se_im = out.prefactor * r.se_im;
  out.flagged = flagged;
  out.n = r.n;
  return out;
}

}  // namespace

CorrelationResult correlation_ratio(const KernelFamily& fam,
                                    const FieldEnsemble& ens,
                                    double alpha_library, double beta,
                                    const std::vector<double>& z,
                                    const std::vector<double>& eta,
                                    size_t slab_index) {
  check_insertions(fam, z, eta);
  if (slab_index >= ens.levels()) throw ConfigError("slab index out of range");
  const double t = ens.cutoffs[slab_index];
  auto psi = insertion_shift(fam, ens.grid, beta, t, z, eta);

  auto base = evaluate_martingale(ens, beta, slab_index);
  auto shifted = evaluate_martingale(ens, beta, slab_index, {}, psi);
  std::vector<std::complex<double>> num(base.size()), den(base.size());
  for (size_t r = 0; r < base.size(); ++r) {
    num[r] = std::exp(alpha_library * shifted[r]);
    den[r] = std::exp(alpha_library * base[r]);
  }
  auto ratio = ratio_from_series(num, den);
  return finish_correlation(ratio, insertion_prefactor_log(fam, beta, t, z, eta),
                            strong_charge(beta, eta));
}

std::vector<CorrelationResult> correlation_sweep(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha_library, double beta,
    const std::vector<double>& z, const std::vector<double>& eta,
    const StreamOptions& opts) {
  check_insertions(fam, z, eta);
  auto cutoffs = sweep_cutoffs(slab_times);
  PhaseSweep shift(cutoffs.size());
  for (size_t k = 0; k < cutoffs.size(); ++k)
    shift[k].psi = insertion_shift(fam, grid, beta, cutoffs[k], z, eta);
  auto sweep = stream_exp_martingale(fam, grid, slab_times, replicas,
                                     master_seed, alpha_library, beta, {shift},
                                     opts);
  std::vector<CorrelationResult> out;
  out.reserve(cutoffs.size());
  const bool flagged = strong_charge(beta, eta);
  for (size_t k = 0; k < cutoffs.size(); ++k) {
    auto ratio = ratio_from_series(sweep.vals[1][k], sweep.vals[0][k]);
    out.push_back(finish_correlation(
        ratio, insertion_prefactor_log(fam, beta, cutoffs[k], z, eta),
        flagged));
  }
  return out;
}

}  // namespace sglab
