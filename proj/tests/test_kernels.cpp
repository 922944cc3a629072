#include <doctest.h>
#include <cmath>
#include "core/family.hpp"
#include "core/grid.hpp"
#include "core/rng.hpp"

using namespace sglab;

// closed forms used as independent oracles:
//   cauchy seed:   kappa_t(r) = t - (1/2) ln((1+e^{2t}r^2)/(1+r^2))
//   gaussian seed: kappa_t(r) = (1/2)[E1(r^2/2) - E1(e^{2t}r^2/2)]
static double kappa_cauchy(double t, double r) {
  return t - 0.5 * std::log((1.0 + std::exp(2 * t) * r * r) / (1.0 + r * r));
}
static double e1(double x) { return -std::expint(-x); }
static double kappa_gauss(double t, double r) {
  return 0.5 * (e1(0.5 * r * r) - e1(0.5 * std::exp(2 * t) * r * r));
}

static KernelFamily make(SeedKind kind, int order = 8) {
  return KernelFamily({kind}, 0.0, 1.0, Density::uniform(), order);
}

TEST_CASE("cumulative kernel matches closed forms") {
  auto fc = make(SeedKind::Cauchy);
  auto fg = make(SeedKind::Gaussian);
  for (double t : {0.5, 1.0, 3.0, 7.5}) {
    for (double r : {1e-4, 1e-3, 0.02, 0.1, 0.5, 0.93}) {
      CHECK(fc.k(t, 0.1, 0.1 + r) ==
            doctest::Approx(kappa_cauchy(t, r)).epsilon(1e-8));
      CHECK(fg.k(t, 0.1, 0.1 + r) ==
            doctest::Approx(kappa_gauss(t, r)).epsilon(1e-8));
    }
  }
}

TEST_CASE("diagonal of K_t is exactly t") {
  for (auto kind : {SeedKind::Gaussian, SeedKind::Cauchy, SeedKind::Constant}) {
    auto f = make(kind);
    CHECK(f.k(3.7, 0.25, 0.25) == 3.7);
    CHECK(f.k(0.0, 0.5, 0.5) == 0.0);
  }
}

TEST_CASE("slab additivity K_t = K_s + slab(s,t)") {
  auto f = make(SeedKind::Gaussian);
  RngStream rng(7, 0, 0);
  for (int i = 0; i < 50; i++) {
    double x = rng.uniform(), y = rng.uniform();
    double s = rng.uniform(0.0, 4.0), t = s + rng.uniform(0.0, 4.0);
    double lhs = f.k(t, x, y);
    double rhs = f.k(s, x, y) + f.k_slab(s, t, x, y);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("near-diagonal log behaviour of the depth limit") {
  // kappa_t(r) ~ -ln r + (ln 2 - gamma)/2 for r -> 0 at large t (gaussian)
  auto f = make(SeedKind::Gaussian);
  double c0 = 0.057965757829200874;
  double v = f.k(10.0, 0.0, 1e-3);
  CHECK(std::fabs(v + std::log(1e-3) - c0) < 1e-6);
  // the documented spot check: t=10, r=0.1 lands within 0.1 of -ln r
  double spot = f.k(10.0, 0.4, 0.5);
  CHECK(std::fabs(spot + std::log(0.1)) < 0.1);
  CHECK(spot == doctest::Approx(kappa_gauss(10.0, 0.1)).epsilon(1e-10));
}

TEST_CASE("doubled-order validation accepts smooth seeds") {
  auto f = make(SeedKind::Gaussian, 8);
  CHECK(f.k_checked(5.0, 0.2, 0.21) ==
        doctest::Approx(f.k(5.0, 0.2, 0.21)).epsilon(1e-9));
}

TEST_CASE("radial profile matches direct kernel evaluation") {
  for (auto kind : {SeedKind::Gaussian, SeedKind::Cauchy, SeedKind::Constant}) {
    auto f = make(kind, 16);
    for (double t : {1.0, 3.0, 8.0}) {
      auto prof = f.radial(t);
      CHECK((*prof)(0.0) == t);
      for (double r = 1e-6; r < 1.0; r *= 2.7) {
        double want = f.k(t, 0.0, r);
        CHECK((*prof)(r) == doctest::Approx(want).epsilon(2e-9));
      }
    }
  }
}

TEST_CASE("scale kernel symmetry and bounds") {
  auto f = make(SeedKind::Cauchy);
  RngStream rng(3, 1, 0);
  for (int i = 0; i < 100; i++) {
    double u = rng.uniform(0.0, 9.0);
    double x = rng.uniform(), y = rng.uniform();
    double v = f.q(u, x, y);
    CHECK(v == f.q(u, y, x));
    CHECK(v <= 1.0);
    CHECK(v >= 0.0);
  }
}

TEST_CASE("grids integrate the reference intensity") {
  auto f = make(SeedKind::Gaussian);
  auto gm = Grid::midpoint(f, 256);
  double sm = 0;
  for (double w : gm.w) sm += w;
  CHECK(sm == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gm.max_spacing == doctest::Approx(1.0 / 256));
  CHECK(gm.resolves(4.0));
  CHECK(!gm.resolves(6.0));

  auto gg = Grid::gauss(f, 16, 8);
  double cub = 0;
  for (size_t i = 0; i < gg.size(); i++) cub += gg.w[i] * std::pow(gg.x[i], 3);
  CHECK(cub == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("tabulated intensity: mass and inverse-CDF sampling agree") {
  auto den = Density::tabulated({0.0, 0.5, 1.0}, {1.0, 2.0, 0.5});
  KernelFamily f({SeedKind::Gaussian}, 0.0, 1.0, den);
  double total = den.mass(0.0, 1.0);
  CHECK(total == doctest::Approx(0.5 * (1 + 2) * 0.5 + 0.5 * (2 + 0.5) * 0.5));
  for (double u : {0.05, 0.3, 0.5, 0.77, 0.99}) {
    double x = den.sample(0.0, 1.0, u);
    CHECK(den.mass(0.0, x) / total == doctest::Approx(u).epsilon(1e-9));
  }
  auto g = Grid::midpoint(f, 2000);
  double sm = 0;
  for (double w : g.w) sm += w;
  CHECK(sm == doctest::Approx(total).epsilon(1e-5));
}
