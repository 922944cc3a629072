#pragma once
#include <complex>
#include <cstddef>
#include <vector>

namespace sglab {

struct MeanSE {
  double mean = 0.0, se = 0.0;
  size_t n = 0;
};

MeanSE mean_se(const std::vector<double>& xs);
// SE from means of nbatch contiguous batches (robust to autocorrelation)
MeanSE batch_mean_se(const std::vector<double>& xs, int nbatch = 50);

// integrated autocorrelation time with the standard self-consistent window
double integrated_autocorr_time(const std::vector<double>& xs);

struct SlopeFit {
  double slope = 0.0, intercept = 0.0;
};
SlopeFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Delete-one-block jackknife for a statistic of several per-sample series.
// eval receives the sums of each series with one block removed plus the
// remaining count. Returns (point estimate, jackknife SE).
struct JackknifeResult {
  double value = 0.0, se = 0.0;
};
JackknifeResult jackknife_sums(
    const std::vector<std::vector<double>>& series, int nblocks,
    double (*eval)(const std::vector<double>& sums, size_t n, void* ctx),
    void* ctx);

// mean of a complex series with per-component jackknife errors
struct ComplexMeanSE {
  std::complex<double> mean;
  double se_re = 0.0, se_im = 0.0;
  size_t n = 0;
};
ComplexMeanSE complex_mean_se(const std::vector<std::complex<double>>& xs,
                              int nblocks = 50);

// ratio mean(num)/mean(den) for complex series sharing replicas, with
// jackknife per-component errors
ComplexMeanSE complex_ratio_se(const std::vector<std::complex<double>>& num,
                               const std::vector<std::complex<double>>& den,
                               int nblocks = 50);

}  // namespace sglab
