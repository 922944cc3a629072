#include "density.hpp"
#include <algorithm>
#include <cmath>

namespace sglab {

Density Density::uniform(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError("density value must be positive and finite");
  Density d;
  d.uniform_ = true;
  d.uval_ = value;
  return d;
}

Density Density::tabulated(std::vector<double> x, std::vector<double> g) {
  if (x.size() != g.size() || x.size() < 2)
    throw ConfigError("tabulated density needs >= 2 matching nodes");
  for (size_t i = 1; i < x.size(); i++)
    if (!(x[i] > x[i - 1])) throw ConfigError("density nodes must increase");
  for (double v : g)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ConfigError("density values must be nonnegative and finite");
  Density d;
  d.uniform_ = false;
  d.xs_ = std::move(x);
  d.gs_ = std::move(g);
  return d;
}

double Density::value(double x) const {
  if (uniform_) return uval_;
  if (x <= xs_.front()) return gs_.front();
  if (x >= xs_.back()) return gs_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  size_t i = (size_t)(it - xs_.begin()) - 1;
  double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return gs_[i] + t * (gs_[i + 1] - gs_[i]);
}

double Density::mass(double a, double b) const {
  if (uniform_) return uval_ * (b - a);
  // piecewise-linear integral of value() over [a,b]
  double total = 0.0;
  double prev_x = a, prev_g = value(a);
  for (size_t i = 0; i < xs_.size(); i++) {
    if (xs_[i] <= a || xs_[i] >= b) continue;
    total += 0.5 * (prev_g + gs_[i]) * (xs_[i] - prev_x);
    prev_x = xs_[i];
    prev_g = gs_[i];
  }
  total += 0.5 * (prev_g + value(b)) * (b - prev_x);
  return total;
}

double Density::sample(double a, double b, double u) const {
  if (uniform_) return a + (b - a) * u;
  double target = u * mass(a, b);
  double acc = 0.0;
  double prev_x = a, prev_g = value(a);
  auto finish = [&](double x0, double g0, double x1, double g1, double rem) {
    // solve rem = g0*s + (g1-g0)/(x1-x0) * s^2/2 for s in [0, x1-x0]
    double w = x1 - x0;
    if (w <= 0.0) return x0;
    double slope = (g1 - g0) / w;
    if (std::fabs(slope) < 1e-300 * std::fabs(g0)) return g0 > 0 ? x0 + rem / g0 : x1;
    double disc = g0 * g0 + 2.0 * slope * rem;
    double s = (std::sqrt(std::max(disc, 0.0)) - g0) / slope;
    return std::min(std::max(x0 + s, x0), x1);
  };
  for (size_t i = 0; i < xs_.size(); i++) {
    if (xs_[i] <= a || xs_[i] >= b) continue;
    double seg = 0.5 * (prev_g + gs_[i]) * (xs_[i] - prev_x);
    if (acc + seg >= target)
      return finish(prev_x, prev_g, xs_[i], gs_[i], target - acc);
    acc += seg;
    prev_x = xs_[i];
    prev_g = gs_[i];
  }
  return finish(prev_x, prev_g, b, value(b), target - acc);
}

}  // namespace sglab
