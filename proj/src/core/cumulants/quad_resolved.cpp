#include <cmath>
#include "quad.hpp"
#include "../errors.hpp"
#include "../gauss.hpp"
#include "../parallel.hpp"

namespace sglab {

namespace {

struct LeafEval {
  const RadialProfile* prof;
  const std::vector<std::vector<int>>* signs;
  double b2;
  int n;

  // energy sum over pair distances taken from particle positions
  double operator()(const double* pos) const {
    int npair = n * (n - 1) / 2;
    double pairK[28];
    int p = 0;
    for (int a = 0; a < n; a++)
      for (int b = a + 1; b < n; b++)
        pairK[p++] = (*prof)(pos[b] - pos[a]);
    double acc = 0.0;
    for (auto& lam : *signs) {
      double E = 0.0;
      p = 0;
      for (int a = 0; a < n; a++)
        for (int b = a + 1; b < n; b++) {
          double v = pairK[p++];
          E += (lam[(size_t)a] * lam[(size_t)b] > 0) ? v : -v;
        }
      acc += std::exp(-b2 * E);
    }
    (void)npair;
    return acc;
  }
};

}  // namespace

double resolved_moment(const KernelFamily& fam, double beta, double t, int n,
                       const ResolvedQuadOptions& opts) {
  if (n < 1) throw ConfigError("moment order must be >= 1");
  if (!(t > 0.0)) throw ConfigError("resolved engine needs t > 0");
  if (!(beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  bool uniform = fam.density().is_uniform();
  if (uniform && n > 4)
    throw ResourceError("resolved engine supports order <= 4");
  if (!uniform && n > 3)
    throw ResourceError(
        "resolved engine supports order <= 3 for non-uniform intensity");
  if (n == 1) return fam.mass();

  double L = fam.length();
  double s0 = std::min(opts.core_scale * std::exp(-t), L);
  auto prof = fam.radial(t, opts.radial_nodes);
  auto signs = quad_detail::sign_vectors(n, true);
  LeafEval leaf{prof.get(), &signs, beta * beta, n};
  double nfact = 1.0;
  for (int a = 2; a <= n; a++) nfact *= a;
  const double norm = nfact * std::ldexp(1.0, 1 - n);  // n! * 2 * 2^{-n}

  if (uniform) {
    double gamma = fam.density().value(fam.a());
    std::vector<double> g1x, g1w;
    quad_detail::graded_nodes(L, s0, opts.panel_ratio, opts.gl_order, g1x, g1w);
    auto partials = parallel_map<double>(
        (int)g1x.size(), opts.workers, [&](int i1) {
          double pos[5] = {0.0};
          double acc = 0.0;
          pos[1] = g1x[(size_t)i1];
          if (n == 2) {
            return g1w[(size_t)i1] * (L - pos[1]) * leaf(pos);
          }
          std::vector<double> g2x, g2w, g3x, g3w;
          quad_detail::graded_nodes(L - pos[1], s0, opts.panel_ratio,
                                    opts.gl_order, g2x, g2w);
          for (size_t i2 = 0; i2 < g2x.size(); i2++) {
            pos[2] = pos[1] + g2x[i2];
            if (n == 3) {
              acc += g2w[i2] * (L - pos[2]) * leaf(pos);
              continue;
            }
            quad_detail::graded_nodes(L - pos[2], s0, opts.panel_ratio,
                                      opts.gl_order, g3x, g3w);
            double inner = 0.0;
            for (size_t i3 = 0; i3 < g3x.size(); i3++) {
              pos[3] = pos[2] + g3x[i3];
              inner += g3w[i3] * (L - pos[3]) * leaf(pos);
            }
            acc += g2w[i2] * inner;
          }
          return g1w[(size_t)i1] * acc;
        });
    double total = 0.0;
    for (double p : partials) total += p;
    double gpow = 1.0;
    for (int a = 0; a < n; a++) gpow *= gamma;
    return norm * gpow * total;
  }

  // non-uniform intensity: ordered nested form with explicit translation
  const Density& den = fam.density();
  int base_panels = std::max(16, (int)std::ceil(L / 0.05));
  const GaussRule& gr = gauss_rule(opts.gl_order);
  std::vector<double> x1x, x1w;
  double pw = L / base_panels;
  for (int p = 0; p < base_panels; p++) {
    double mid = fam.a() + (p + 0.5) * pw, half = 0.5 * pw;
    for (size_t j = 0; j < gr.x.size(); j++) {
      x1x.push_back(mid + half * gr.x[j]);
      x1w.push_back(half * gr.w[j]);
    }
  }
  auto partials =
      parallel_map<double>((int)x1x.size(), opts.workers, [&](int i1) {
        double pos[5];
        pos[0] = x1x[(size_t)i1];
        double w1 = x1w[(size_t)i1] * den.value(pos[0]);
        std::vector<double> g2x, g2w, g3x, g3w;
        quad_detail::graded_nodes(fam.b() - pos[0], s0, opts.panel_ratio,
                                  opts.gl_order, g2x, g2w);
        double acc = 0.0;
        for (size_t i2 = 0; i2 < g2x.size(); i2++) {
          pos[1] = pos[0] + g2x[i2];
          double w2 = g2w[i2] * den.value(pos[1]);
          if (n == 2) {
            acc += w2 * leaf(pos);
            continue;
          }
          quad_detail::graded_nodes(fam.b() - pos[1], s0, opts.panel_ratio,
                                    opts.gl_order, g3x, g3w);
          double inner = 0.0;
          for (size_t i3 = 0; i3 < g3x.size(); i3++) {
            pos[2] = pos[1] + g3x[i3];
            inner += g3w[i3] * den.value(pos[2]) * leaf(pos);
          }
          acc += w2 * inner;
        }
        return w1 * acc;
      });
  double total = 0.0;
  for (double p : partials) total += p;
  return norm * total;
}

}  // namespace sglab
