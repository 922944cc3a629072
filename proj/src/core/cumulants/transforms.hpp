#pragma once
#include <vector>

namespace sglab {

// Raw moments (m_1, m_2, ...) to cumulants (C_1, C_2, ...) and back, via the
// recursion C_n = m_n - sum_{k=1}^{n-1} binom(n-1, k-1) C_k m_{n-k}.
// Orders up to 20 (binomials stay exact in doubles).
std::vector<double> moments_to_cumulants(const std::vector<double>& m);
std::vector<double> cumulants_to_moments(const std::vector<double>& c);

}  // namespace sglab
