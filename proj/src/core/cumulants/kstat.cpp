#include "kstat.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include "../errors.hpp"
#include "../stats.hpp"

namespace sglab {

namespace {

constexpr int kMaxOrder = 6;

// Distinct-index product sums: D(b_1..b_m) = sum over pairwise-distinct
// indices i_1..i_m of prod_j x_{i_j}^{b_j}, from power sums by the merge
// recursion D(b, q) = D(b) s_q - sum_j D(b with b_j -> b_j + q).
struct DistinctSums {
  const std::vector<double>& s;  // s[q-1] = power sum of order q
  std::map<std::vector<int>, double> memo;

  double get(std::vector<int> b) {
    std::sort(b.begin(), b.end());
    if (b.empty()) return 1.0;
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
    int q = b.back();
    std::vector<int> rest(b.begin(), b.end() - 1);
    double val = get(rest) * s[(size_t)q - 1];
    for (size_t j = 0; j < rest.size(); j++) {
      std::vector<int> merged = rest;
      merged[j] += q;
      val -= get(merged);
    }
    memo.emplace(std::move(b), val);
    return val;
  }
};

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; i++) f *= i;
  return f;
}

// number of set partitions of [r] whose block sizes form the multiset b
double partition_count(int r, const std::vector<int>& b) {
  double cnt = factorial(r);
  for (int sz : b) cnt /= factorial(sz);
  int run = 1;
  for (size_t i = 1; i <= b.size(); i++) {
    if (i < b.size() && b[i] == b[i - 1]) {
      run++;
    } else {
      cnt /= factorial(run);
      run = 1;
    }
  }
  return cnt;
}

void integer_partitions(int r, int max_part, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (r == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(r, max_part); p >= 1; p--) {
    cur.push_back(p);
    integer_partitions(r - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<double> k_statistics_from_power_sums(const std::vector<double>& s,
                                                 size_t n, int max_order) {
  if (max_order < 1) throw ConfigError("k-statistics order must be >= 1");
  if (max_order > kMaxOrder)
    throw ResourceError("k-statistics beyond order 6 are refused");
  if ((size_t)max_order > s.size())
    throw ConfigError("not enough power sums for requested order");
  if (n < (size_t)max_order)
    throw ConfigError("k-statistics need at least max_order samples");
  DistinctSums ds{s, {}};
  std::vector<double> out((size_t)max_order);
  for (int r = 1; r <= max_order; r++) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    integer_partitions(r, r, cur, parts);
    double acc = 0.0;
    for (auto& b : parts) {
      std::vector<int> bs = b;
      std::sort(bs.begin(), bs.end());
      int m = (int)bs.size();
      double falling = 1.0;
      for (int i = 0; i < m; i++) falling *= (double)(n - (size_t)i);
      double sign = (m % 2 == 1) ? 1.0 : -1.0;
      acc += partition_count(r, bs) * sign * factorial(m - 1) * ds.get(bs) /
             falling;
    }
    out[(size_t)r - 1] = acc;
  }
  return out;
}

namespace {
struct KEvalCtx {
  int order;
};
double k_eval(const std::vector<double>& sums, size_t n, void* ctx) {
  int r = ((KEvalCtx*)ctx)->order;
  return k_statistics_from_power_sums(sums, n, r)[(size_t)r - 1];
}
}  // namespace

KStatResult k_statistics(const std::vector<double>& xs, int max_order,
                         int jk_blocks) {
  if (max_order > kMaxOrder)
    throw ResourceError("k-statistics beyond order 6 are refused");
  size_t n = xs.size();
  if (n < (size_t)std::max(4, 2 * max_order))
    throw ConfigError("too few samples for k-statistics");
  std::vector<std::vector<double>> powers((size_t)max_order);
  for (auto& p : powers) p.resize(n);
  for (size_t i = 0; i < n; i++) {
    double p = 1.0;
    for (int q = 1; q <= max_order; q++) {
      p *= xs[i];
      powers[(size_t)q - 1][i] = p;
    }
  }
  KStatResult res;
  res.n = n;
  res.k.resize((size_t)max_order);
  res.se.resize((size_t)max_order);
  for (int r = 1; r <= max_order; r++) {
    KEvalCtx ctx{r};
    auto jr = jackknife_sums(powers, jk_blocks, k_eval, &ctx);
    res.k[(size_t)r - 1] = jr.value;
    res.se[(size_t)r - 1] = jr.se;
  }
  return res;
}

}  // namespace sglab
