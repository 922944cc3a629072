#include <doctest.h>
#include <cmath>
#include <vector>
#include "core/cumulants/curve.hpp"
#include "core/cumulants/quad.hpp"
#include "core/cumulants/thresholds.hpp"
#include "core/errors.hpp"

using namespace sglab;

static KernelFamily unit_family(int order = 16) {
  return KernelFamily({SeedKind::Gaussian}, 0.0, 1.0, Density::uniform(),
                      order);
}

// brute-force tensor moment: full index loops, full sign enumeration
static double brute_moment(const KernelFamily& fam, double beta, double t,
                           int n, const Grid& g) {
  int G = (int)g.size();
  std::vector<double> K((size_t)G * (size_t)G);
  for (int i = 0; i < G; i++)
    for (int j = 0; j < G; j++)
      K[(size_t)i * (size_t)G + (size_t)j] =
          fam.k(t, g.x[(size_t)i], g.x[(size_t)j]);
  double b2 = beta * beta;
  std::vector<int> idx((size_t)n, 0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int a = 0; a < n; a++) w *= g.w[(size_t)idx[(size_t)a]];
    double sum_l = 0.0;
    for (long mask = 0; mask < (1L << n); mask++) {
      double E = 0.0;
      for (int a = 0; a < n; a++)
        for (int b = a + 1; b < n; b++) {
          int la = ((mask >> a) & 1) ? -1 : 1;
          int lb = ((mask >> b) & 1) ? -1 : 1;
          double v = K[(size_t)idx[(size_t)a] * (size_t)G + (size_t)idx[(size_t)b]];
          E += la * lb * v;
        }
      sum_l += std::exp(-b2 * E);
    }
    total += w * sum_l;
    int k = n - 1;
    while (k >= 0 && ++idx[(size_t)k] == G) idx[(size_t)k--] = 0;
    if (k < 0) break;
  }
  return total * std::ldexp(1.0, -n);
}

TEST_CASE("tensor moments match full brute-force enumeration") {
  auto fam = unit_family(8);
  auto g9 = Grid::midpoint(fam, 9);
  auto g7 = Grid::gauss(fam, 7, 1);
  for (int n : {2, 3}) {
    double want = brute_moment(fam, 0.7, 1.5, n, g9);
    double got = moment_quadrature(fam, 0.7, 1.5, n, g9);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
  double want4 = brute_moment(fam, 1.1, 2.5, 4, g7);
  double got4 = moment_quadrature(fam, 1.1, 2.5, 4, g7);
  // summation order differs; larger exponents leave ~1e-11 float noise
  CHECK(got4 == doctest::Approx(want4).epsilon(1e-10));
}

TEST_CASE("tensor moment basics") {
  auto fam = unit_family(8);
  auto g = Grid::midpoint(fam, 32);
  CHECK(moment_quadrature(fam, 0.8, 2.0, 1, g) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // t = 0: field is trivial, M_0 = mass
  CHECK(moment_quadrature(fam, 0.8, 0.0, 3, g) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sign-vector halving is exact") {
  auto fam = unit_family(8);
  auto g = Grid::midpoint(fam, 12);
  TensorQuadOptions full;
  full.sign_halving = false;
  for (int n : {2, 3, 4}) {
    double a = moment_quadrature(fam, 0.9, 2.0, n, g);
    double b = moment_quadrature(fam, 0.9, 2.0, n, g, full);
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}

TEST_CASE("order-2 tensor moment equals the cosh identity") {
  auto fam = unit_family(16);
  auto g = Grid::gauss(fam, 60, 8);
  double beta = 0.8, t = 3.0;
  double m2 = moment_quadrature(fam, beta, t, 2, g);
  // independent evaluation: radial reduction of the double integral
  std::vector<double> xs, ws;
  quad_detail::graded_nodes(1.0, 0.25 * std::exp(-t), 1.6, 16, xs, ws);
  double b2 = beta * beta, oracle = 0.0;
  for (size_t i = 0; i < xs.size(); i++)
    oracle += ws[i] * 2.0 * (1.0 - xs[i]) * std::cosh(b2 * fam.k(t, 0, xs[i]));
  CHECK(m2 == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("tensor budget guard") {
  auto fam = unit_family(8);
  auto g = Grid::midpoint(fam, 256);
  CHECK_THROWS_AS(moment_quadrature(fam, 0.8, 1.0, 6, g), ResourceError);
  CHECK_THROWS_AS(moment_quadrature(fam, 0.8, 1.0, 7, g), ResourceError);
  auto g24 = Grid::midpoint(fam, 24);
  CHECK_NOTHROW(moment_quadrature(fam, 0.8, 1.0, 6, g24));
}

TEST_CASE("resolved engine agrees with the tensor engine at moderate depth") {
  auto fam = unit_family(16);
  double beta = 0.9, t = 1.5;
  ResolvedQuadOptions r;
  auto g2 = Grid::gauss(fam, 60, 8);
  CHECK(resolved_moment(fam, beta, t, 2, r) ==
        doctest::Approx(moment_quadrature(fam, beta, t, 2, g2)).epsilon(1e-7));
  auto g3 = Grid::gauss(fam, 40, 6);
  CHECK(resolved_moment(fam, beta, t, 3, r) ==
        doctest::Approx(moment_quadrature(fam, beta, t, 3, g3)).epsilon(1e-7));
  auto g4 = Grid::gauss(fam, 20, 6);
  TensorQuadOptions topts;
  topts.budget = 300000000;
  CHECK(resolved_moment(fam, beta, t, 4, r) ==
        doctest::Approx(moment_quadrature(fam, beta, t, 4, g4, topts))
            .epsilon(1e-5));
}

TEST_CASE("resolved engine: frozen reference values") {
  // m_2 = 1 + C_2 at beta^2 = 0.8 (independent prototype integration)
  auto fam = unit_family(16);
  double beta = std::sqrt(0.8);
  CHECK(resolved_moment(fam, beta, 7.0, 2) ==
        doctest::Approx(3.49627514).epsilon(1e-6));
  CHECK(resolved_moment(fam, beta, 8.0, 2) ==
        doctest::Approx(3.69154762).epsilon(1e-6));
}

TEST_CASE("resolved engine: uniform and ordered-nested paths agree") {
  auto fam = unit_family(16);
  auto flat = Density::tabulated({0.0, 1.0}, {1.0, 1.0});
  KernelFamily fam2({SeedKind::Gaussian}, 0.0, 1.0, flat, 16);
  for (int n : {2, 3}) {
    double a = resolved_moment(fam, 0.9, 2.0, n);
    double b = resolved_moment(fam2, 0.9, 2.0, n);
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
  }
  CHECK_THROWS_AS(resolved_moment(fam2, 0.9, 2.0, 4), ResourceError);
  CHECK_THROWS_AS(resolved_moment(fam, 0.9, 2.0, 5), ResourceError);
}

TEST_CASE("resolved engine refinement stability") {
  auto fam = unit_family(16);
  ResolvedQuadOptions lo, hi;
  hi.gl_order = 18;
  hi.panel_ratio = 1.5;
  double a = resolved_moment(fam, 1.1, 4.0, 4, lo);
  double b = resolved_moment(fam, 1.1, 4.0, 4, hi);
  CHECK(a == doctest::Approx(b).epsilon(1e-7));
}

TEST_CASE("thresholds") {
  auto tab = threshold_table(4);
  CHECK(tab[0].beta_n == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tab[1].beta_n == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(tab[2].beta_n == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
  CHECK(tab[3].beta_n == doctest::Approx(std::sqrt(1.75)).epsilon(1e-15));
  CHECK(threshold_index(0.8).index == 1);
  CHECK(threshold_index(0.8).counterterms == 0);
  CHECK(threshold_index(1.0).index == 2);  // boundary goes up
  CHECK(threshold_index(std::sqrt(1.2)).index == 2);
  CHECK(threshold_index(std::sqrt(1.6)).index == 3);
  CHECK(threshold_index(std::sqrt(1.6)).counterterms == 2);
  CHECK_THROWS_AS(threshold_index(std::sqrt(2.0)), ResourceError);
  CHECK_THROWS_AS(threshold_index(1.6), ResourceError);
  CHECK_THROWS_AS(threshold_index(-0.5), ConfigError);
}

TEST_CASE("cumulant curve: C1 constant and C2 growth window") {
  auto fam = unit_family(16);
  std::vector<double> ts = {4, 5, 6, 7, 8};
  auto rep = cumulant_curve(fam, std::sqrt(1.5), ts, 2, CurveEngine::Resolved,
                            nullptr);
  for (auto& p : rep.points)
    if (p.order == 1) CHECK(p.value == doctest::Approx(1.0).epsilon(1e-8));
  // upper-half window slope frozen from the independent prototype
  CHECK(rep.growth_slope[2] == doctest::Approx(0.5285).epsilon(0.01));
  for (auto& p : rep.points)
    if (p.order == 2) CHECK(p.uncertainty < 1e-4 * std::fabs(p.value));
}
