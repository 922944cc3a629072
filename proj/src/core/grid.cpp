#include "grid.hpp"
#include <cmath>
#include "gauss.hpp"
#include "errors.hpp"

namespace sglab {

Grid Grid::midpoint(const KernelFamily& fam, int n) {
  if (n < 1 || n > 1 << 20) throw ConfigError("grid size out of range");
  Grid g;
  g.rule = "midpoint";
  double h = fam.length() / n;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; i++) {
    g.x[i] = fam.a() + (i + 0.5) * h;
    g.w[i] = h * fam.density().value(g.x[i]);
  }
  g.max_spacing = h;
  return g;
}

Grid Grid::gauss(const KernelFamily& fam, int panels, int q) {
  if (panels < 1 || q < 1 || (long)panels * q > 1 << 20)
    throw ConfigError("grid size out of range");
  Grid g;
  g.rule = "gauss";
  const GaussRule& gr = gauss_rule(q);
  double pw = fam.length() / panels;
  g.x.reserve((size_t)panels * q);
  g.w.reserve((size_t)panels * q);
  for (int p = 0; p < panels; p++) {
    double mid = fam.a() + (p + 0.5) * pw, half = 0.5 * pw;
    for (int j = 0; j < q; j++) {
      double xx = mid + half * gr.x[j];
      g.x.push_back(xx);
      g.w.push_back(half * gr.w[j] * fam.density().value(xx));
    }
  }
  double ms = 0.0;
  for (size_t i = 1; i < g.x.size(); i++)
    ms = std::max(ms, g.x[i] - g.x[i - 1]);
  g.max_spacing = std::max(ms, g.x.empty() ? 0.0 : g.x.front() - fam.a());
  return g;
}

bool Grid::resolves(double t) const {
  return max_spacing <= 0.5 * std::exp(-t);
}

}  // namespace sglab
