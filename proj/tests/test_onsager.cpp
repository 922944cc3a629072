#include <doctest.h>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>
#include "core/errors.hpp"
#include "core/onsager.hpp"

using namespace sglab;

static KernelFamily unit_family(int order = 16) {
  return KernelFamily({SeedKind::Gaussian}, 0.0, 1.0, Density::uniform(),
                      order);
}

TEST_CASE("charge config canonical order") {
  ChargeConfig c;
  c.pos = {0.9, 0.1, 0.5, 0.3};
  c.sign = {1, -1, 1, -1};
  auto before_pairs = [&] {
    std::vector<std::pair<double, int>> v;
    for (size_t k = 0; k < c.size(); k++) v.push_back({c.pos[k], c.sign[k]});
    std::sort(v.begin(), v.end());
    return v;
  };
  auto orig = before_pairs();
  c.canonicalize();
  CHECK(c.sign == std::vector<int>{-1, -1, 1, 1});
  CHECK(c.pos == std::vector<double>{0.1, 0.3, 0.5, 0.9});
  auto after = before_pairs();
  CHECK(orig == after);  // multiset preserved
  auto copy = c;
  copy.canonicalize();  // idempotent
  CHECK(copy.pos == c.pos);
  CHECK(copy.sign == c.sign);
  CHECK(c.is_neutral());
}

static double brute_matching(const std::vector<double>& pos,
                             const std::vector<double>& neg) {
  std::vector<size_t> perm(neg.size());
  std::iota(perm.begin(), perm.end(), (size_t)0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double tot = 0.0;
    for (size_t k = 0; k < pos.size(); k++)
      tot += std::fabs(pos[k] - neg[perm[k]]);
    best = std::min(best, tot);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST_CASE("sorted-rank matching is the optimal transport value") {
  auto m = wasserstein_matching({0.1, 0.5}, {0.2, 0.6});
  CHECK(m.m == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(wasserstein_matching({0.4, 0.2}, {0.2, 0.4}).m == 0.0);
  CHECK(wasserstein_matching({0.3}, {0.8}).m ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(wasserstein_matching({0.1}, {0.1, 0.2}), ConfigError);
  CHECK_THROWS_AS(wasserstein_matching({}, {}), ConfigError);

  RngStream rng(4242, 0, 0);
  for (int trial = 0; trial < 1000; trial++) {
    size_t p = 1 + rng.below(7);
    std::vector<double> pos(p), neg(p);
    for (size_t k = 0; k < p; k++) {
      pos[k] = rng.uniform();
      neg[k] = rng.uniform();
    }
    double fast = wasserstein_matching(pos, neg).m;
    CHECK(fast == doctest::Approx(brute_matching(pos, neg)).epsilon(1e-12));
    CHECK(wasserstein_matching(neg, pos).m ==
          doctest::Approx(fast).epsilon(1e-15));
    CHECK(fast <= (double)p * 1.0 + 1e-12);
  }
}

TEST_CASE("potential increment against direct pair sums") {
  auto fam = unit_family();
  ChargeConfig pair;
  pair.pos = {0.3, 0.62};
  pair.sign = {1, -1};
  CHECK(potential_increment(fam, pair, 0.0, 5.0) ==
        doctest::Approx(-2.0 * fam.k(5.0, 0.3, 0.62)).epsilon(1e-9));
  pair.sign = {1, 1};
  CHECK(potential_increment(fam, pair, 0.0, 5.0) ==
        doctest::Approx(2.0 * fam.k(5.0, 0.3, 0.62)).epsilon(1e-9));

  ChargeConfig quad;
  quad.pos = {0.30, 0.70, 0.31, 0.69};
  quad.sign = {1, 1, -1, -1};
  auto fine = unit_family(64);  // independent higher-resolution oracle
  double want = 0.0;
  for (size_t k = 0; k < 4; k++)
    for (size_t l = k + 1; l < 4; l++)
      want += 2.0 * quad.sign[k] * quad.sign[l] *
              (fine.k(5.0, quad.pos[k], quad.pos[l]) -
               fine.k(0.0, quad.pos[k], quad.pos[l]));
  CHECK(potential_increment(fam, quad, 0.0, 5.0) ==
        doctest::Approx(want).epsilon(1e-8));

  // translation invariance for the translation-invariant seed
  ChargeConfig shifted = quad;
  for (auto& x : shifted.pos) x += 0.17;
  CHECK(potential_increment(fam, shifted, 1.0, 4.0) ==
        doctest::Approx(potential_increment(fam, quad, 1.0, 4.0))
            .epsilon(1e-10));

  CHECK(potential_increment(fam, quad, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(potential_increment(fam, quad, 3.0, 2.0), ConfigError);
}

TEST_CASE("cluster partition at a scale") {
  double r = 2.0, d = std::exp(-r);
  ChargeConfig two;
  two.pos = {0.4, 0.4 + 2.0 * d};
  two.sign = {1, -1};
  auto part = cluster_partition(two, r);
  REQUIRE(part.has_value());
  CHECK(part->groups.size() == 2);
  CHECK(part->charge == std::vector<int>{1, -1});

  ChargeConfig dip;
  dip.pos = {0.4, 0.4 + 0.5 * d};
  dip.sign = {1, -1};
  auto one = cluster_partition(dip, r);
  REQUIRE(one.has_value());
  CHECK(one->groups.size() == 1);
  CHECK(one->charge == std::vector<int>{0});

  // chained gaps below the scale but diameter above it: no valid partition
  ChargeConfig chain;
  chain.pos = {0.3, 0.3 + 0.7 * d, 0.3 + 1.5 * d};
  chain.sign = {1, -1, 1};
  CHECK_FALSE(cluster_partition(chain, r).has_value());

  // uniqueness: moving any element across the returned boundary breaks a
  // distance condition
  auto& g = part->groups;
  REQUIRE(g.size() == 2);
  double moved_intra = std::fabs(two.pos[g[0][0]] - two.pos[g[1][0]]);
  CHECK(moved_intra >= d);  // merging both would violate the diameter rule
}

TEST_CASE("audit: exact baseline bound and refined finiteness") {
  auto fam = unit_family();
  auto mixed = uniform_config_sampler(fam, 5, -1);
  auto rep = onsager_audit(fam, mixed, 5, 0.5, {2.0, 4.0}, 2000, 991);
  REQUIRE(!rep.rows.empty());
  bool saw_baseline = false;
  for (auto& row : rep.rows) {
    CHECK(std::isfinite(row.min_slack));
    CHECK(row.min_slack <= row.mean_slack);
    CHECK(row.c_hat == doctest::Approx(std::max(0.0, -row.min_slack)));
    if (row.inequality == "baseline") {
      saw_baseline = true;
      CHECK(row.min_slack >= -1e-9);  // variance positivity, Q(0)=1
      CHECK(row.samples == 2000);
    }
  }
  CHECK(saw_baseline);

  auto dip = dipole_config_sampler(fam, 2, 0.5);
  auto drep = onsager_audit(fam, dip, 2, 0.0, {6.0}, 500, 321);
  bool saw_refined = false;
  for (auto& row : drep.rows)
    if (row.inequality == "neutral-refined") {
      saw_refined = true;
      CHECK(std::isfinite(row.min_slack));
    }
  CHECK(saw_refined);
}

TEST_CASE("audit determinism across worker counts") {
  auto fam = unit_family();
  auto sampler = uniform_config_sampler(fam, 4, 0);
  auto a = onsager_audit(fam, sampler, 4, 0.5, {3.0}, 1000, 5, 1);
  auto b = onsager_audit(fam, sampler, 4, 0.5, {3.0}, 1000, 5, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t k = 0; k < a.rows.size(); k++) {
    CHECK(a.rows[k].min_slack == b.rows[k].min_slack);
    CHECK(a.rows[k].mean_slack == b.rows[k].mean_slack);
    CHECK(a.rows[k].samples == b.rows[k].samples);
  }
}
