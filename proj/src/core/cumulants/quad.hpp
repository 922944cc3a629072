#pragma once
#include <vector>
#include "../family.hpp"
#include "../grid.hpp"

namespace sglab {

// Moment of the depth-t martingale, E[M_t^n], by deterministic tensor-grid
// quadrature over the supplied grid. Sorted index tuples with multiplicities
// cover the symmetric integrand; diagonal nodes are included (K_t is bounded
// at finite t). The sign-vector sum uses the global flip symmetry to halve
// the work unless disabled.
struct TensorQuadOptions {
  long long budget = 200000000;  // cap on tuples x sign-vectors
  bool sign_halving = true;
  int workers = 0;
  int max_order = 6;  // public contract; the partition sum reuses 8
};

double moment_quadrature(const KernelFamily& fam, double beta, double t, int n,
                         const Grid& grid, const TensorQuadOptions& opts = {});

// Resolved-scale moment for larger t: integrates the symmetrized integrand
// over the ordered sector in gap coordinates, with geometrically graded
// Gauss-Legendre panels down to ~e^{-t} and exact nested limits. Uniform
// intensity integrates the translation coordinate analytically (n <= 4);
// non-uniform intensities use the ordered nested form (n <= 3).
struct ResolvedQuadOptions {
  int gl_order = 14;
  double panel_ratio = 1.8;
  double core_scale = 0.5;  // first panel edge as a fraction of e^{-t}
  int radial_nodes = 8192;
  int workers = 0;
};

double resolved_moment(const KernelFamily& fam, double beta, double t, int n,
                       const ResolvedQuadOptions& opts = {});

namespace quad_detail {
// sign vectors over {-1,+1}^n; with halving only those with first entry +1
std::vector<std::vector<int>> sign_vectors(int n, bool halving);
// graded panel nodes/weights on [0, R]
void graded_nodes(double R, double s0, double rho, int gl_order,
                  std::vector<double>& xs, std::vector<double>& ws);
}  // namespace quad_detail

}  // namespace sglab
