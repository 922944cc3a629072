#pragma once
#include <string>
#include <vector>
#include "family.hpp"

namespace sglab {

// One measured constant from the regularity scan: the coarse-grid value, the
// value after refining the scan grid, and whether the two agree within 5%.
struct AssumptionEntry {
  std::string name;
  double coarse = 0.0;
  double refined = 0.0;
  bool stable = false;
};

struct AssumptionReport {
  // decay envelopes |Q| (1+w)^2, |Q'| (1+w)^2, |Q''| (1+w)^2 with w = e^u r,
  // plus the cumulative-kernel log remainder sup |K_t + ln(r v e^{-t})|
  std::vector<AssumptionEntry> entries;
  double psd_min_eig = 0.0, psd_scale = 0.0;
  bool psd_ok = false;
  double q0 = 0.0;
  bool q0_ok = false;
  double density_max = 0.0;
  bool density_ok = false;
  bool pass = false;
};

struct ValidateOptions {
  double u_max = 8.0;
  int u_steps = 33;
  int r_steps = 64;
  int psd_nodes = 64;
};

AssumptionReport validate_kernel_assumptions(const KernelFamily& fam,
                                             const ValidateOptions& opts = {});

}  // namespace sglab
