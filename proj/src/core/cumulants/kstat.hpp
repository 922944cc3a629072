#pragma once
#include <cstddef>
#include <vector>

namespace sglab {

// k-statistics: minimum-variance unbiased estimators of cumulants from IID
// samples, orders 1..6 (higher orders are refused). Built from power sums via
// the set-partition formula with distinct-index product sums, so any order up
// to the cap comes from the same machinery. SEs are delete-one-block
// jackknife estimates.
struct KStatResult {
  std::vector<double> k;
  std::vector<double> se;
  size_t n = 0;
};

KStatResult k_statistics(const std::vector<double>& xs, int max_order,
                         int jk_blocks = 50);

// k-statistics from precomputed power sums s[q-1] = sum_i x_i^q
std::vector<double> k_statistics_from_power_sums(const std::vector<double>& s,
                                                 size_t n, int max_order);

}  // namespace sglab
