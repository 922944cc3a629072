#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "../ensemble.hpp"
#include "../family.hpp"
#include "../grid.hpp"
#include "../onsager.hpp"
#include "../stats.hpp"

namespace sglab {

// Test function sampled on strictly increasing nodes, evaluated in between by
// linear interpolation and clamped outside the node range. A default-built
// instance is identically zero.
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(std::vector<double> xs, std::vector<double> vals);

  template <class F>
  static TestFunction tabulate(double a, double b, int n, F&& f) {
    std::vector<double> xs(static_cast<size_t>(n)), vs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      xs[static_cast<size_t>(i)] =
          a + (b - a) * static_cast<double>(i) / (n - 1);
      vs[static_cast<size_t>(i)] = f(xs[static_cast<size_t>(i)]);
    }
    return TestFunction(std::move(xs), std::move(vs));
  }

  double operator()(double x) const;
  bool zero() const { return xs_.empty(); }
  size_t size() const { return xs_.size(); }

  // max |theta| plus the largest square-root-modulus quotient
  // |theta(x_i) - theta(x_j)| / sqrt(x_j - x_i) over node pairs (<= 512 nodes)
  double holder_half_norm() const;

  std::vector<double> on_grid(const Grid& grid) const;

 private:
  std::vector<double> xs_, vals_;
};

// Sample mean of exp(i sum_k lambda_k theta(x_k)) over gas configurations,
// with delete-one-block jackknife errors.
ComplexMeanSE charge_fourier(const std::vector<ChargeConfig>& samples,
                             const TestFunction& theta, int nblocks = 50);

struct RatioResult {
  std::complex<double> value;
  double se_re = 0.0, se_im = 0.0;
  size_t n = 0;
};

// E[exp(alpha M^{theta})] / E[exp(alpha M)] over the shared replicas of a
// stored ensemble, where M^{theta} carries theta as a phase shift.
RatioResult sg_ratio(const FieldEnsemble& ens, double alpha_library,
                     double beta, size_t slab_index, const TestFunction& theta);

// Field sweep evaluated at every slab level with common replicas, streamed so
// the replica count is not memory-bound. Each variant is a list of phase
// shifts (phi = real, psi = imaginary, empty = zero): one entry shared by all
// levels, or one entry per level. The base observable (no shift) is always
// variant 0. vals[v][k][r] = exp(alpha M) for variant v, level k, replica r.
struct PhasePair {
  std::vector<double> phi, psi;
};
using PhaseSweep = std::vector<PhasePair>;
struct ExpMartingaleSweep {
  std::vector<double> cutoffs;
  std::vector<std::vector<std::vector<std::complex<double>>>> vals;
};
ExpMartingaleSweep stream_exp_martingale(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha, double beta,
    const std::vector<PhaseSweep>& variants, const StreamOptions& opts = {});

// sg_ratio at every slab level of a streamed sweep (common replicas)
std::vector<RatioResult> sg_ratio_sweep(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha_library, double beta,
    const TestFunction& theta, const StreamOptions& opts = {});

struct CorrelationResult {
  std::complex<double> value;  // prefactor * ratio
  double se_re = 0.0, se_im = 0.0;
  std::complex<double> ratio;  // raw expectation ratio
  double prefactor = 1.0;      // exp(-beta^2 sum_{l<l'} eta_l eta_l' K_t)
  bool flagged = false;        // set when (1 + 2 max|eta|) beta^2 >= 2
  size_t n = 0;
};

// Fractional-charge correlation ratio at insertions z with charges eta:
// prefactor times E[exp(alpha Mhat)]/E[exp(alpha M)], where Mhat carries the
// imaginary phase psi(x) = beta^2 sum_l eta_l K_t(x, z_l). Coincident
// insertion points are refused.
CorrelationResult correlation_ratio(const KernelFamily& fam,
                                    const FieldEnsemble& ens,
                                    double alpha_library, double beta,
                                    const std::vector<double>& z,
                                    const std::vector<double>& eta,
                                    size_t slab_index);

std::vector<CorrelationResult> correlation_sweep(
    const KernelFamily& fam, const Grid& grid,
    const std::vector<double>& slab_times, size_t replicas,
    uint64_t master_seed, double alpha_library, double beta,
    const std::vector<double>& z, const std::vector<double>& eta,
    const StreamOptions& opts = {});

}  // namespace sglab
