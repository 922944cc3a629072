#include "curve.hpp"
#include <cmath>
#include "transforms.hpp"
#include "../errors.hpp"
#include "../stats.hpp"

namespace sglab {

double upper_half_slope(const std::vector<double>& ts,
                        const std::vector<double>& log_values) {
  if (ts.size() != log_values.size() || ts.size() < 2)
    throw ConfigError("slope window needs >= 2 points");
  size_t start = ts.size() / 2;
  if (ts.size() - start < 2) start = ts.size() - 2;
  std::vector<double> xs(ts.begin() + (long)start, ts.end());
  std::vector<double> ys(log_values.begin() + (long)start, log_values.end());
  return ols_fit(xs, ys).slope;
}

static std::vector<double> curve_moments(const KernelFamily& fam, double beta,
                                         double t, int order_max,
                                         CurveEngine engine, const Grid* grid,
                                         const ResolvedQuadOptions& ropts,
                                         const TensorQuadOptions& topts) {
  std::vector<double> m((size_t)order_max);
  for (int n = 1; n <= order_max; n++) {
    if (engine == CurveEngine::TensorGrid) {
      if (!grid) throw ConfigError("tensor engine needs a grid");
      m[(size_t)n - 1] = moment_quadrature(fam, beta, t, n, *grid, topts);
    } else {
      m[(size_t)n - 1] = resolved_moment(fam, beta, t, n, ropts);
    }
  }
  return m;
}

CumulantReport cumulant_curve(const KernelFamily& fam, double beta,
                              const std::vector<double>& t_list, int order_max,
                              CurveEngine engine, const Grid* grid,
                              const ResolvedQuadOptions& ropts,
                              const TensorQuadOptions& topts) {
  if (t_list.empty()) throw ConfigError("empty t list");
  if (order_max < 1) throw ConfigError("order_max must be >= 1");
  CumulantReport rep;
  rep.beta = beta;
  ResolvedQuadOptions fine = ropts;
  fine.gl_order += 2;
  fine.radial_nodes *= 2;
  std::map<int, std::vector<double>> logabs;
  for (double t : t_list) {
    auto m = curve_moments(fam, beta, t, order_max, engine, grid, ropts, topts);
    auto c = moments_to_cumulants(m);
    std::vector<double> cref = c;
    if (engine == CurveEngine::Resolved && t > 0) {
      auto mref =
          curve_moments(fam, beta, t, order_max, engine, grid, fine, topts);
      cref = moments_to_cumulants(mref);
    }
    for (int i = 1; i <= order_max; i++) {
      CumulantPoint p;
      p.t = t;
      p.order = i;
      p.value = c[(size_t)i - 1];
      p.uncertainty = std::fabs(c[(size_t)i - 1] - cref[(size_t)i - 1]);
      p.method = "quadrature";
      rep.points.push_back(p);
      logabs[i].push_back(std::log(std::max(std::fabs(p.value), 1e-300)));
    }
  }
  if (t_list.size() >= 2) {
    for (int i = 1; i <= order_max; i++)
      rep.growth_slope[i] = upper_half_slope(t_list, logabs[i]);
  }
  return rep;
}

}  // namespace sglab
