#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "family.hpp"
#include "rng.hpp"

namespace sglab {

// A point of the configuration space: n signed unit charges on the interval.
// Canonical order puts the negative charges first, each sign class sorted by
// position (stable), so equal multisets compare equal.
struct ChargeConfig {
  std::vector<double> pos;
  std::vector<int> sign;  // each +1 or -1

  size_t size() const { return pos.size(); }
  int total_charge() const;
  bool is_neutral() const { return total_charge() == 0; }
  void canonicalize();
};

struct Matching {
  double m = 0.0;
  // pair[k] = (index into pos list, index into neg list) of the k-th pair
  std::vector<std::pair<size_t, size_t>> pairs;
};

// 1-Wasserstein matching between + and - positions: sort both classes and
// pair by rank (optimal in 1D); ties broken by input order.
Matching wasserstein_matching(const std::vector<double>& pos,
                              const std::vector<double>& neg);

// Increment of the regularized electric potential between cutoffs s and u:
// U = 2 sum_{k<l} sign_k sign_l int_s^u Q_r(x_k, x_l) dr.
double potential_increment(const KernelFamily& fam, const ChargeConfig& cfg,
                           double s, double u);

struct ClusterPartition {
  std::vector<std::vector<size_t>> groups;  // original particle indices
  std::vector<int> charge;                  // per-group signed sum
};

// Partition into clusters at scale r: intra-group distances < e^{-r},
// inter-group distances >= e^{-r}. Computed by cutting sorted gaps at the
// threshold and then verifying group diameters; absent when no partition
// satisfies both conditions.
std::optional<ClusterPartition> cluster_partition(const ChargeConfig& cfg,
                                                  double r);

// Draws one configuration; receives the current sweep cutoff u so adversarial
// samplers can adapt their length scales.
using ConfigSampler = std::function<ChargeConfig(RngStream&, double u)>;

// i.i.d. positions from the reference intensity. Charge classes: 0 = strictly
// neutral (n/2 of each sign), +1 = uniform signs conditioned on non-neutral,
// -1 = unconditioned uniform signs.
ConfigSampler uniform_config_sampler(const KernelFamily& fam, int n,
                                     int charge_class);

// Neutral dipole stress sampler: n/2 pairs at separation e^{-gamma u},
// centers i.i.d. uniform (clipped so both ends stay inside the interval).
ConfigSampler dipole_config_sampler(const KernelFamily& fam, int n,
                                    double gamma);

struct AuditRow {
  double u = 0.0;
  std::string inequality;  // baseline | neutral-refined | non-neutral
  double min_slack = 0.0;
  double mean_slack = 0.0;
  double c_hat = 0.0;  // max(0, -min_slack)
  size_t samples = 0;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  double s = 0.0;
  int i = 0;
};

// Statistical audit of the electrostatic lower bounds over sampled
// configurations. Per sample: baseline slack U + n(u-s) always; refined slack
// U + (n-1)(u-s) + (-ln m - s)_+ when the configuration is neutral; slack
// U + (n-1)(u-s) otherwise. Rows are emitted per (u, inequality) with at
// least one contributing sample.
AuditReport onsager_audit(const KernelFamily& fam, const ConfigSampler& draw,
                          int i, double s, const std::vector<double>& u_list,
                          size_t samples, uint64_t seed, int workers = 0);

}  // namespace sglab
