#include "bracket.hpp"

#include <cmath>
#include <limits>

#include "../errors.hpp"
#include "../parallel.hpp"
#include "../stats.hpp"
#include "quad.hpp"

namespace sglab {

// int Q(e^s|x-y|) g(y) dy over [a,b], graded panels shrinking to ~e^{-s}
// around the peak at y = x
static double inner_q_integral(const KernelFamily& fam, double s, double x) {
  double es = std::exp(s);
  std::vector<double> off, ow;
  double reach = std::max(x - fam.a(), fam.b() - x);
  quad_detail::graded_nodes(reach, 0.5 * std::exp(-s), 1.8, 12, off, ow);
  double acc = 0.0;
  for (size_t i = 0; i < off.size(); i++) {
    double yl = x - off[i], yr = x + off[i];
    if (yl >= fam.a())
      acc += ow[i] * fam.seed().value(es * off[i]) * fam.density().value(yl);
    if (yr <= fam.b())
      acc += ow[i] * fam.seed().value(es * off[i]) * fam.density().value(yr);
  }
  return acc;
}

BracketScan bracket12_bound_scan(const KernelFamily& fam, double beta,
                                 const std::vector<double>& s_list,
                                 const Grid& grid, int workers) {
  if (!(beta > 0)) throw ConfigError("bracket scan needs beta > 0");
  if (s_list.empty()) throw ConfigError("bracket scan needs scan points");
  for (double s : s_list)
    if (s < 0) throw ConfigError("bracket scan points must be >= 0");

  BracketScan out;
  out.s = s_list;
  out.value.resize(s_list.size());
  double b2 = beta * beta;
  double mass = fam.mass();

  for (size_t is = 0; is < s_list.size(); is++) {
    double s = s_list[is];
    auto partials = parallel_map<double>(
        (int)grid.size(), workers, [&](int i) {
          return grid.w[(size_t)i] * inner_q_integral(fam, s, grid.x[(size_t)i]);
        });
    double qq = 0.0;
    for (double p : partials) qq += p;  // fixed order: worker-independent
    out.value[is] = 0.5 * b2 * std::exp(1.5 * b2 * s) * mass * qq;
  }

  std::vector<double> logs(out.value.size());
  for (size_t i = 0; i < out.value.size(); i++) {
    if (!(out.value[i] > 0))
      throw NumericalError("bracket bound is not positive; cannot fit slope");
    logs[i] = std::log(out.value[i]);
  }
  // a single-point scan carries a value but no growth rate
  out.slope = out.s.size() >= 2 ? ols_fit(out.s, logs).slope
                                : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace sglab
