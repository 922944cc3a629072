#include "family.hpp"
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include "gauss.hpp"
#include "errors.hpp"

namespace sglab {

RadialProfile::RadialProfile(const SeedProfile& seed, double t, double r_max,
                             int nodes) {
  if (!(t > 0.0)) throw ConfigError("radial profile needs t > 0");
  t_ = t;
  s_ = std::exp(-t);
  rmax_ = r_max * 1.0000001 + 1e-300;
  double Xi = std::log1p(rmax_ / s_);
  h_ = Xi / (nodes - 1);
  val_.resize(nodes);
  der_.resize(nodes);
  const GaussRule& gr = gauss_rule(16);
  for (int i = 0; i < nodes; i++) {
    double xi = h_ * i;
    double d = s_ * std::expm1(xi);
    double v;
    if (i == 0) {
      v = t;  // kappa_t(0) = t * Q(0) = t
    } else {
      int nseg = (int)std::ceil(t);
      v = 0.0;
      double seg = t / nseg;
      for (int k = 0; k < nseg; k++) {
        double mid = (k + 0.5) * seg, half = 0.5 * seg;
        double acc = 0.0;
        for (size_t j = 0; j < gr.x.size(); j++)
          acc += gr.w[j] * seed.value(std::exp(mid + half * gr.x[j]) * d);
        v += half * acc;
      }
    }
    double dk_dd = (i == 0) ? 0.0
                            : (seed.value(std::exp(t) * d) - seed.value(d)) / d;
    val_[i] = v;
    der_[i] = dk_dd * s_ * std::exp(xi);  // chain rule to xi
  }
}

double RadialProfile::operator()(double r) const {
  if (r <= 0.0) return t_;
  if (r >= rmax_) r = rmax_;
  double xi = std::log1p(r / s_);
  double p = xi / h_;
  int i = std::min((int)p, (int)val_.size() - 2);
  double tau = p - i;
  double t2 = tau * tau, t3 = t2 * tau;
  double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + tau;
  double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * val_[i] + h10 * h_ * der_[i] + h01 * val_[i + 1] +
         h11 * h_ * der_[i + 1];
}

KernelFamily::KernelFamily(SeedProfile seed, double a, double b,
                           Density density, int quadrature_order)
    : seed_(seed), a_(a), b_(b), density_(std::move(density)),
      order_(quadrature_order), cache_(std::make_shared<RadialCache>()) {
  if (!(b > a)) throw ConfigError("interval must have positive length");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw ConfigError("interval endpoints must be finite");
  if (order_ < 2 || order_ > 64)
    throw ConfigError("quadrature order must lie in [2, 64]");
  double q0 = seed_.value(0.0);
  if (std::fabs(q0 - 1.0) > 1e-12)
    throw ConfigError("seed profile must satisfy Q(0) = 1");
}

double KernelFamily::q(double u, double x, double y) const {
  return seed_.value(std::exp(u) * std::fabs(x - y));
}

double KernelFamily::k_order(double t0, double t1, double d, int order) const {
  if (d == 0.0) return t1 - t0;
  const GaussRule& gr = gauss_rule(order);
  int nseg = std::max(1, (int)std::ceil(t1 - t0));
  double seg = (t1 - t0) / nseg, total = 0.0;
  for (int k = 0; k < nseg; k++) {
    double mid = t0 + (k + 0.5) * seg, half = 0.5 * seg;
    double acc = 0.0;
    for (size_t j = 0; j < gr.x.size(); j++)
      acc += gr.w[j] * seed_.value(std::exp(mid + half * gr.x[j]) * d);
    total += half * acc;
  }
  return total;
}

double KernelFamily::k(double t, double x, double y) const {
  if (!(t >= 0.0)) throw ConfigError("kernel depth t must be >= 0");
  if (t == 0.0) return 0.0;
  return k_order(0.0, t, std::fabs(x - y), order_);
}

double KernelFamily::k_checked(double t, double x, double y) const {
  double v = k(t, x, y);
  double v2 = k_order(0.0, t, std::fabs(x - y), 2 * order_);
  double scale = std::max({std::fabs(v), std::fabs(v2), 1e-30});
  if (std::fabs(v - v2) > 1e-8 * scale)
    throw NumericalError("cumulative kernel failed doubled-order validation");
  return v2;
}

double KernelFamily::k_slab(double t0, double t1, double x, double y) const {
  if (!(t1 >= t0) || !(t0 >= 0.0)) throw ConfigError("bad slab bounds");
  if (t1 == t0) return 0.0;
  return k_order(t0, t1, std::fabs(x - y), order_);
}

struct KernelFamily::RadialCache {
  std::mutex mu;
  std::map<std::pair<double, int>, std::shared_ptr<const RadialProfile>> map;
};

std::shared_ptr<const RadialProfile> KernelFamily::radial(double t,
                                                          int nodes) const {
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto key = std::make_pair(t, nodes);
  auto it = cache_->map.find(key);
  if (it != cache_->map.end()) return it->second;
  auto prof = std::make_shared<RadialProfile>(seed_, t, length(), nodes);
  if (cache_->map.size() > 64) cache_->map.clear();
  return cache_->map.emplace(key, prof).first->second;
}

}  // namespace sglab
