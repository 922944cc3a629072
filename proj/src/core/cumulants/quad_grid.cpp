#include <cmath>
#include "quad.hpp"
#include "../errors.hpp"
#include "../gauss.hpp"
#include "../parallel.hpp"

namespace sglab {

namespace quad_detail {

std::vector<std::vector<int>> sign_vectors(int n, bool halving) {
  std::vector<std::vector<int>> out;
  int free_bits = halving ? n - 1 : n;
  for (long mask = 0; mask < (1L << free_bits); mask++) {
    std::vector<int> lam((size_t)n);
    if (halving) {
      lam[0] = 1;
      for (int k = 0; k < n - 1; k++)
        lam[(size_t)k + 1] = ((mask >> k) & 1) ? -1 : 1;
    } else {
      for (int k = 0; k < n; k++) lam[(size_t)k] = ((mask >> k) & 1) ? -1 : 1;
    }
    out.push_back(std::move(lam));
  }
  return out;
}

void graded_nodes(double R, double s0, double rho, int gl_order,
                  std::vector<double>& xs, std::vector<double>& ws) {
  xs.clear();
  ws.clear();
  if (R <= 0) return;
  const GaussRule& gr = gauss_rule(gl_order);
  double lo = 0.0, hi = std::min(s0, R);
  for (;;) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (size_t j = 0; j < gr.x.size(); j++) {
      xs.push_back(mid + half * gr.x[j]);
      ws.push_back(half * gr.w[j]);
    }
    if (hi >= R) break;
    lo = hi;
    hi = std::min(hi * rho, R);
  }
}

}  // namespace quad_detail

namespace {

double binom_count(int G, int n) {
  // C(G+n-1, n) without overflow for the sizes used here
  double v = 1.0;
  for (int i = 1; i <= n; i++) v = v * (G + n - i) / i;
  return v;
}

}  // namespace

double moment_quadrature(const KernelFamily& fam, double beta, double t, int n,
                         const Grid& grid, const TensorQuadOptions& opts) {
  if (n < 1) throw ConfigError("moment order must be >= 1");
  if (n > opts.max_order)
    throw ResourceError("moment order exceeds the tensor budget cap");
  if (!(t >= 0.0)) throw ConfigError("depth t must be >= 0");
  if (!(beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  int G = (int)grid.size();
  if (G < 1) throw ConfigError("empty grid");
  auto signs = quad_detail::sign_vectors(n, opts.sign_halving);
  double tuples = binom_count(G, n);
  if (tuples * (double)signs.size() > (double)opts.budget)
    throw ResourceError("tensor quadrature budget exceeded");

  // pair kernel on the grid
  std::vector<double> K((size_t)G * (size_t)G);
  if (t > 0) {
    auto prof = fam.radial(t);
    for (int i = 0; i < G; i++)
      for (int j = 0; j <= i; j++) {
        double v = (*prof)(std::fabs(grid.x[(size_t)i] - grid.x[(size_t)j]));
        K[(size_t)i * (size_t)G + (size_t)j] = v;
        K[(size_t)j * (size_t)G + (size_t)i] = v;
      }
  }

  double b2 = beta * beta;
  int npair = n * (n - 1) / 2;
  // tasks partition the tuple space by the first index, combined in order
  auto partials = parallel_map<double>(G, opts.workers, [&](int i1) {
    std::vector<int> idx((size_t)n, i1);
    std::vector<double> pairK((size_t)std::max(npair, 1));
    double acc = 0.0;
    for (;;) {
      // multiplicity n! / prod(mult!) and weight product
      double wprod = 1.0;
      for (int a = 0; a < n; a++) wprod *= grid.w[(size_t)idx[(size_t)a]];
      double mult = 1.0;
      for (int a = 2; a <= n; a++) mult *= a;  // n!
      {
        int a = 0;
        while (a < n) {
          int b = a;
          while (b < n && idx[(size_t)b] == idx[(size_t)a]) b++;
          for (int r = 2; r <= b - a; r++) mult /= r;
          a = b;
        }
      }
      int p = 0;
      for (int a = 0; a < n; a++)
        for (int b = a + 1; b < n; b++)
          pairK[(size_t)p++] =
              K[(size_t)idx[(size_t)a] * (size_t)G + (size_t)idx[(size_t)b]];
      double sum_l = 0.0;
      for (auto& lam : signs) {
        double E = 0.0;
        p = 0;
        for (int a = 0; a < n; a++)
          for (int b = a + 1; b < n; b++) {
            double v = pairK[(size_t)p++];
            E += (lam[(size_t)a] * lam[(size_t)b] > 0) ? v : -v;
          }
        sum_l += std::exp(-b2 * E);
      }
      acc += mult * wprod * sum_l;
      // next non-decreasing tuple with fixed first index
      int k = n - 1;
      while (k >= 1 && idx[(size_t)k] == G - 1) k--;
      if (k < 1) break;
      int v = ++idx[(size_t)k];
      for (int j = k + 1; j < n; j++) idx[(size_t)j] = v;
    }
    return acc;
  });
  double total = 0.0;
  for (double p : partials) total += p;
  double norm = std::ldexp(1.0, -n);  // 2^{-n}
  if (opts.sign_halving) norm *= 2.0;
  return total * norm;
}

}  // namespace sglab
