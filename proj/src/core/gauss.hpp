#pragma once
#include <vector>
#include <cstddef>

namespace sglab {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss_rule(int order);

}  // namespace sglab
