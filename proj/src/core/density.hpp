#pragma once
#include <vector>
#include "errors.hpp"

namespace sglab {

// Reference intensity g(x) dx on the interval. Uniform by default; a tabulated
// variant (piecewise linear) covers non-flat intensities.
class Density {
 public:
  static Density uniform(double value = 1.0);
  static Density tabulated(std::vector<double> x, std::vector<double> g);

  bool is_uniform() const { return uniform_; }
  double value(double x) const;
  // integral of g over [a, x2] minus over [a, x1] is not needed; total mass is
  double mass(double a, double b) const;
  // inverse-CDF sample over [a,b]; u in (0,1)
  double sample(double a, double b, double u) const;

 private:
  bool uniform_ = true;
  double uval_ = 1.0;
  std::vector<double> xs_, gs_;
};

}  // namespace sglab
