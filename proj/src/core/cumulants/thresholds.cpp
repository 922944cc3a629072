#include "thresholds.hpp"
#include <cmath>
#include "../errors.hpp"

namespace sglab {

static double beta_threshold(int n) {
  return std::sqrt(2.0 * (1.0 - 1.0 / (2.0 * n)));
}

ThresholdInfo threshold_index(double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (beta >= std::sqrt(2.0))
    throw ResourceError(
        "beta at or beyond sqrt(2): unbounded counterterm order refused");
  for (int n = 1;; n++) {
    if (beta < beta_threshold(n)) return {n, n - 1};
  }
}

std::vector<ThresholdRow> threshold_table(int n_max) {
  if (n_max < 1 || n_max > 64) throw ConfigError("threshold table size");
  std::vector<ThresholdRow> rows;
  for (int n = 1; n <= n_max; n++) rows.push_back({n, beta_threshold(n)});
  return rows;
}

}  // namespace sglab
