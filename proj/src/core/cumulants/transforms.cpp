#include "transforms.hpp"
#include <cmath>
#include "../errors.hpp"

namespace sglab {

static double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; i++) v = v * (n - k + i) / i;
  return std::round(v);
}

static void check_len(size_t n) {
  if (n == 0) throw ConfigError("empty moment/cumulant vector");
  if (n > 20) throw ResourceError("moment/cumulant order above 20 refused");
}

std::vector<double> moments_to_cumulants(const std::vector<double>& m) {
  check_len(m.size());
  size_t N = m.size();
  std::vector<double> c(N);
  for (size_t n = 1; n <= N; n++) {
    double acc = m[n - 1];
    for (size_t k = 1; k < n; k++)
      acc -= binom((int)n - 1, (int)k - 1) * c[k - 1] * m[n - k - 1];
    c[n - 1] = acc;
  }
  return c;
}

std::vector<double> cumulants_to_moments(const std::vector<double>& c) {
  check_len(c.size());
  size_t N = c.size();
  std::vector<double> m(N);
  for (size_t n = 1; n <= N; n++) {
    double acc = c[n - 1];
    for (size_t k = 1; k < n; k++)
      acc += binom((int)n - 1, (int)k - 1) * c[k - 1] * m[n - k - 1];
    m[n - 1] = acc;
  }
  return m;
}

}  // namespace sglab
