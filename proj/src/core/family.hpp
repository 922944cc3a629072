#pragma once
#include <memory>
#include <vector>
#include "seed.hpp"
#include "density.hpp"

namespace sglab {

// Radial profile of the cumulative kernel at fixed depth t:
//   kappa_t(r) = int_0^t Q(e^u r) du,  K_t(x,y) = kappa_t(|x-y|).
// Tabulated on a log-graded grid xi = log(1 + r/e^{-t}) with Hermite cubics
// and the exact derivative d kappa/dr = (Q(e^t r) - Q(r))/r.
class RadialProfile {
 public:
  RadialProfile(const SeedProfile& seed, double t, double r_max, int nodes);
  double operator()(double r) const;
  double depth() const { return t_; }

 private:
  double t_, s_, rmax_, h_;
  std::vector<double> val_, der_;  // value and d/dxi at each node
};

// Covariance family on an interval: scale kernels Q_u, cumulative kernel K_t,
// reference intensity g(x) dx, and the quadrature order used for u-integrals.
class KernelFamily {
 public:
  KernelFamily(SeedProfile seed, double a, double b, Density density,
               int quadrature_order = 8);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  const SeedProfile& seed() const { return seed_; }
  const Density& density() const { return density_; }
  int quadrature_order() const { return order_; }
  double mass() const { return density_.mass(a_, b_); }

  // scale kernel Q_u(x,y) = Q(e^u |x-y|)
  double q(double u, double x, double y) const;

  // cumulative kernel K_t(x,y) = int_0^t Q_u(x,y) du via Gauss-Legendre on
  // u-subintervals of length <= 1; validated against the doubled order.
  double k(double t, double x, double y) const;
  // same value, with the doubled-order cross-check applied (relative 1e-8)
  double k_checked(double t, double x, double y) const;

  // slab integral int_[t0,t1] Q_u(x,y) du
  double k_slab(double t0, double t1, double x, double y) const;

  std::shared_ptr<const RadialProfile> radial(double t, int nodes = 8192) const;

 private:
  double k_order(double t0, double t1, double d, int order) const;

  SeedProfile seed_;
  double a_, b_;
  Density density_;
  int order_;
  struct RadialCache;
  std::shared_ptr<RadialCache> cache_;
};

}  // namespace sglab
