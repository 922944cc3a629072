#pragma once
#include <string>
#include <vector>
#include "family.hpp"

namespace sglab {

// Spatial quadrature grid over the family interval. Weights absorb the
// reference intensity: sum_i w_i f(x_i) ~ int f(x) g(x) dx.
struct Grid {
  std::vector<double> x, w;
  double max_spacing = 0.0;
  std::string rule;

  size_t size() const { return x.size(); }

  static Grid midpoint(const KernelFamily& fam, int n);
  // composite Gauss-Legendre: uniform panels, q nodes each
  static Grid gauss(const KernelFamily& fam, int panels, int q);

  // grids finer than e^{-t}/2 resolve the depth-t kernel; callers warn
  bool resolves(double t) const;
};

}  // namespace sglab
