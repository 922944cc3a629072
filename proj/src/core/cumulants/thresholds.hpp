#pragma once
#include <vector>

namespace sglab {

// Collapse thresholds beta_n = sqrt(2(1 - 1/2n)) in d = 1. The n-th even
// cumulant of the martingale diverges once beta >= beta_n; renormalization
// subtracts the n-1 divergent even cumulants for beta in [beta_{n-1}, beta_n).
// At beta >= sqrt(2) the counterterm order is unbounded and the computation
// is refused.
struct ThresholdInfo {
  int index = 1;         // smallest n with beta < beta_n
  int counterterms = 0;  // n - 1
};

ThresholdInfo threshold_index(double beta);

struct ThresholdRow {
  int n;
  double beta_n;
};
std::vector<ThresholdRow> threshold_table(int n_max);

}  // namespace sglab
