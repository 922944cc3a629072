#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

namespace sglab {

namespace {

// max over the (u, r) scan of the three decay envelopes; derivatives by
// central differences at radial step 1e-6 (an x-step of 1e-6 e^{-u})
struct DecayMax {
  double c_q = 0.0, c_dq = 0.0, c_d2q = 0.0;
};

DecayMax decay_scan(const SeedProfile& seed, double diam, double u_max,
                    int u_steps, int r_steps) {
  DecayMax m;
  const double h = 1e-6;
  for (int iu = 0; iu < u_steps; iu++) {
    double u = u_max * iu / (u_steps - 1);
    double eu = std::exp(u);
    for (int ir = 0; ir < r_steps; ir++) {
      // log-spaced radii over (0, diam]
      double r = diam * std::pow(1e-6, 1.0 - (double)(ir + 1) / r_steps);
      double w = eu * r;
      double env = (1.0 + w) * (1.0 + w);
      double q0 = seed.value(w);
      double qp = seed.value(w + h), qm = seed.value(std::max(0.0, w - h));
      m.c_q = std::max(m.c_q, std::fabs(q0) * env);
      m.c_dq = std::max(m.c_dq, std::fabs((qp - qm) / (2 * h)) * env);
      m.c_d2q = std::max(m.c_d2q, std::fabs((qp - 2 * q0 + qm) / (h * h)) * env);
    }
  }
  return m;
}

double log_remainder(const KernelFamily& fam, double diam, double t,
                     int r_steps) {
  auto prof = fam.radial(t);
  double sup = 0.0;
  for (int ir = 0; ir < r_steps; ir++) {
    double r = diam * std::pow(1e-6, 1.0 - (double)(ir + 1) / r_steps);
    double v = (*prof)(r) + std::log(std::max(r, std::exp(-t)));
    sup = std::max(sup, std::fabs(v));
  }
  return sup;
}

bool stable(double coarse, double refined) {
  double scale = std::max(std::fabs(refined), 1e-12);
  return std::isfinite(coarse) && std::isfinite(refined) &&
         std::fabs(refined - coarse) <= 0.05 * scale;
}

}  // namespace

AssumptionReport validate_kernel_assumptions(const KernelFamily& fam,
                                             const ValidateOptions& opts) {
  AssumptionReport rep;
  double diam = fam.length();
  const SeedProfile& seed = fam.seed();

  DecayMax lo = decay_scan(seed, diam, opts.u_max, opts.u_steps, opts.r_steps);
  DecayMax hi = decay_scan(seed, diam, opts.u_max, 2 * opts.u_steps - 1,
                           2 * opts.r_steps);
  rep.entries.push_back({"decay_Q", lo.c_q, hi.c_q, stable(lo.c_q, hi.c_q)});
  rep.entries.push_back(
      {"decay_dQ", lo.c_dq, hi.c_dq, stable(lo.c_dq, hi.c_dq)});
  rep.entries.push_back(
      {"decay_d2Q", lo.c_d2q, hi.c_d2q, stable(lo.c_d2q, hi.c_d2q)});

  // remainder sup must stabilize as the depth grows, else K_t has no
  // log-potential limit (this is what rules out non-decaying seeds)
  double rem_mid = log_remainder(fam, diam, 0.5 * opts.u_max, opts.r_steps);
  double rem_top = log_remainder(fam, diam, opts.u_max, opts.r_steps);
  rep.entries.push_back(
      {"log_remainder", rem_mid, rem_top, stable(rem_mid, rem_top)});

  // positive semidefiniteness of the scale-0 Gram matrix on a uniform probe
  int n = opts.psd_nodes;
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double xi = fam.a() + diam * (i + 0.5) / n;
      double xj = fam.a() + diam * (j + 0.5) / n;
      gram(i, j) = seed.value(std::fabs(xi - xj));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  rep.psd_scale = std::max(std::fabs(es.eigenvalues().minCoeff()),
                           std::fabs(es.eigenvalues().maxCoeff()));
  rep.psd_min_eig = es.eigenvalues().minCoeff();
  rep.psd_ok = rep.psd_min_eig >= -1e-9 * rep.psd_scale;

  rep.q0 = seed.value(0.0);
  rep.q0_ok = std::fabs(rep.q0 - 1.0) <= 1e-12;

  rep.density_max = 0.0;
  for (int i = 0; i <= 256; i++) {
    double x = fam.a() + diam * i / 256.0;
    rep.density_max = std::max(rep.density_max, fam.density().value(x));
  }
  rep.density_ok = std::isfinite(rep.density_max) && rep.density_max >= 0.0;

  rep.pass = rep.psd_ok && rep.q0_ok && rep.density_ok;
  for (auto& e : rep.entries) rep.pass = rep.pass && e.stable;
  return rep;
}

}  // namespace sglab
