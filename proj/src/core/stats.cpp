#include "stats.hpp"
#include <algorithm>
#include <cmath>
#include "errors.hpp"

namespace sglab {

MeanSE mean_se(const std::vector<double>& xs) {
  MeanSE r;
  r.n = xs.size();
  if (r.n == 0) throw ConfigError("mean of empty series");
  double s = 0;
  for (double x : xs) s += x;
  r.mean = s / (double)r.n;
  if (r.n > 1) {
    double v = 0;
    for (double x : xs) v += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(v / ((double)r.n * (double)(r.n - 1)));
  }
  return r;
}

MeanSE batch_mean_se(const std::vector<double>& xs, int nbatch) {
  size_t n = xs.size();
  if (nbatch < 2 || n < (size_t)(2 * nbatch)) return mean_se(xs);
  std::vector<double> bm((size_t)nbatch);
  for (int b = 0; b < nbatch; b++) {
    size_t lo = n * (size_t)b / (size_t)nbatch;
    size_t hi = n * (size_t)(b + 1) / (size_t)nbatch;
    double s = 0;
    for (size_t i = lo; i < hi; i++) s += xs[i];
    bm[(size_t)b] = s / (double)(hi - lo);
  }
  MeanSE r = mean_se(bm);
  r.n = n;
  return r;
}

double integrated_autocorr_time(const std::vector<double>& xs) {
  size_t n = xs.size();
  if (n < 16) return 1.0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= (double)n;
  double c0 = 0;
  for (double x : xs) c0 += (x - mean) * (x - mean);
  c0 /= (double)n;
  if (c0 <= 0) return 1.0;
  double tau = 1.0;
  size_t max_lag = n / 4;
  for (size_t lag = 1; lag < max_lag; lag++) {
    double c = 0;
    for (size_t i = 0; i + lag < n; i++)
      c += (xs[i] - mean) * (xs[i + lag] - mean);
    c /= (double)(n - lag);
    tau += 2.0 * c / c0;
    if ((double)lag >= 6.0 * tau) break;  // Sokal window
  }
  return std::max(tau, 1.0);
}

SlopeFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("slope fit needs >= 2 matching points");
  double n = (double)x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); i++) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw NumericalError("degenerate abscissae in slope fit");
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

JackknifeResult jackknife_sums(
    const std::vector<std::vector<double>>& series, int nblocks,
    double (*eval)(const std::vector<double>& sums, size_t n, void* ctx),
    void* ctx) {
  if (series.empty()) throw ConfigError("jackknife needs at least one series");
  size_t n = series[0].size();
  for (auto& s : series)
    if (s.size() != n) throw ConfigError("jackknife series length mismatch");
  if (n < 4) throw ConfigError("jackknife needs >= 4 samples");
  int B = std::min<int>(nblocks, (int)(n / 2));
  size_t ns = series.size();
  std::vector<double> total(ns, 0.0);
  for (size_t s = 0; s < ns; s++)
    for (double v : series[s]) total[s] += v;

  JackknifeResult r;
  r.value = eval(total, n, ctx);
  std::vector<double> theta((size_t)B);
  std::vector<double> rest(ns);
  for (int b = 0; b < B; b++) {
    size_t lo = n * (size_t)b / (size_t)B, hi = n * (size_t)(b + 1) / (size_t)B;
    for (size_t s = 0; s < ns; s++) {
      double blk = 0;
      for (size_t i = lo; i < hi; i++) blk += series[s][i];
      rest[s] = total[s] - blk;
    }
    theta[(size_t)b] = eval(rest, n - (hi - lo), ctx);
  }
  double tm = 0;
  for (double t : theta) tm += t;
  tm /= B;
  double v = 0;
  for (double t : theta) v += (t - tm) * (t - tm);
  r.se = std::sqrt(v * (double)(B - 1) / (double)B);
  return r;
}

ComplexMeanSE complex_mean_se(const std::vector<std::complex<double>>& xs,
                              int nblocks) {
  std::vector<double> re(xs.size()), im(xs.size());
  for (size_t i = 0; i < xs.size(); i++) {
    re[i] = xs[i].real();
    im[i] = xs[i].imag();
  }
  auto mean0 = [](const std::vector<double>& sums, size_t n, void*) {
    return sums[0] / (double)n;
  };
  auto jr = jackknife_sums({re}, nblocks, mean0, nullptr);
  auto ji = jackknife_sums({im}, nblocks, mean0, nullptr);
  ComplexMeanSE r;
  r.mean = {jr.value, ji.value};
  r.se_re = jr.se;
  r.se_im = ji.se;
  r.n = xs.size();
  return r;
}

ComplexMeanSE complex_ratio_se(const std::vector<std::complex<double>>& num,
                               const std::vector<std::complex<double>>& den,
                               int nblocks) {
  if (num.size() != den.size())
    throw ConfigError("ratio series length mismatch");
  size_t n = num.size();
  std::vector<double> nr(n), ni(n), dr(n), di(n);
  for (size_t i = 0; i < n; i++) {
    nr[i] = num[i].real();
    ni[i] = num[i].imag();
    dr[i] = den[i].real();
    di[i] = den[i].imag();
  }
  // ratio of complex means; real and imaginary parts jackknifed jointly
  auto eval_re = [](const std::vector<double>& s, size_t, void*) {
    std::complex<double> N(s[0], s[1]), D(s[2], s[3]);
    return (N / D).real();
  };
  auto eval_im = [](const std::vector<double>& s, size_t, void*) {
    std::complex<double> N(s[0], s[1]), D(s[2], s[3]);
    return (N / D).imag();
  };
  auto jr = jackknife_sums({nr, ni, dr, di}, nblocks, eval_re, nullptr);
  auto ji = jackknife_sums({nr, ni, dr, di}, nblocks, eval_im, nullptr);
  ComplexMeanSE r;
  r.mean = {jr.value, ji.value};
  r.se_re = jr.se;
  r.se_im = ji.se;
  r.n = n;
  return r;
}

}  // namespace sglab
