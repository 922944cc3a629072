#pragma once
#include <map>
#include <string>
#include <vector>
#include "quad.hpp"

namespace sglab {

struct CumulantPoint {
  double t;
  int order;
  double value;
  double uncertainty;
  std::string method;
};

struct CumulantReport {
  std::vector<CumulantPoint> points;
  // least-squares slope of ln|C_i(t)| vs t over the upper half of t_list
  std::map<int, double> growth_slope;
  double beta = 0.0;
};

enum class CurveEngine { TensorGrid, Resolved };

// Cumulants C_1..C_order_max at each t: moments by the selected quadrature
// engine, then the moment-to-cumulant transform. Uncertainty per entry is the
// shift under one refinement step of the engine.
CumulantReport cumulant_curve(const KernelFamily& fam, double beta,
                              const std::vector<double>& t_list, int order_max,
                              CurveEngine engine, const Grid* grid,
                              const ResolvedQuadOptions& ropts = {},
                              const TensorQuadOptions& topts = {});

// growth-slope helper shared with other scans (upper-half window)
double upper_half_slope(const std::vector<double>& ts,
                        const std::vector<double>& log_values);

}  // namespace sglab
