#include "onsager.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "errors.hpp"
#include "parallel.hpp"

namespace sglab {

int ChargeConfig::total_charge() const {
  int q = 0;
  for (int s : sign) q += s;
  return q;
}

void ChargeConfig::canonicalize() {
  if (pos.size() != sign.size())
    throw ConfigError("charge config has mismatched position/sign lengths");
  std::vector<size_t> idx(pos.size());
  std::iota(idx.begin(), idx.end(), (size_t)0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (sign[a] != sign[b]) return sign[a] < sign[b];  // negatives first
    return pos[a] < pos[b];
  });
  std::vector<double> p(pos.size());
  std::vector<int> s(sign.size());
  for (size_t k = 0; k < idx.size(); k++) {
    p[k] = pos[idx[k]];
    s[k] = sign[idx[k]];
  }
  pos.swap(p);
  sign.swap(s);
}

Matching wasserstein_matching(const std::vector<double>& pos,
                              const std::vector<double>& neg) {
  if (pos.empty() || pos.size() != neg.size())
    throw ConfigError(
        "matching needs equally many + and - charges (neutral config)");
  size_t p = pos.size();
  std::vector<size_t> ip(p), in(p);
  std::iota(ip.begin(), ip.end(), (size_t)0);
  std::iota(in.begin(), in.end(), (size_t)0);
  std::stable_sort(ip.begin(), ip.end(),
                   [&](size_t a, size_t b) { return pos[a] < pos[b]; });
  std::stable_sort(in.begin(), in.end(),
                   [&](size_t a, size_t b) { return neg[a] < neg[b]; });
  Matching out;
  out.pairs.resize(p);
  for (size_t k = 0; k < p; k++) {
    out.pairs[k] = {ip[k], in[k]};
    out.m += std::fabs(pos[ip[k]] - neg[in[k]]);
  }
  return out;
}

double potential_increment(const KernelFamily& fam, const ChargeConfig& cfg,
                           double s, double u) {
  if (!(0 <= s && s <= u))
    throw ConfigError("potential increment needs 0 <= s <= u");
  if (cfg.pos.size() != cfg.sign.size())
    throw ConfigError("charge config has mismatched position/sign lengths");
  double acc = 0.0;
  for (size_t k = 0; k < cfg.size(); k++)
    for (size_t l = k + 1; l < cfg.size(); l++)
      acc += (double)(cfg.sign[k] * cfg.sign[l]) *
             fam.k_slab(s, u, cfg.pos[k], cfg.pos[l]);
  return 2.0 * acc;
}

std::optional<ClusterPartition> cluster_partition(const ChargeConfig& cfg,
                                                  double r) {
  if (cfg.size() < 1) throw ConfigError("cluster partition needs particles");
  double d = std::exp(-r);
  std::vector<size_t> idx(cfg.size());
  std::iota(idx.begin(), idx.end(), (size_t)0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return cfg.pos[a] < cfg.pos[b]; });

  // maximal runs of consecutive gaps < e^{-r}: the only candidate partition,
  // since closer-than-threshold pairs are forced into a common group
  ClusterPartition part;
  std::vector<size_t> cur = {idx[0]};
  for (size_t k = 1; k < idx.size(); k++) {
    if (cfg.pos[idx[k]] - cfg.pos[idx[k - 1]] < d) {
      cur.push_back(idx[k]);
    } else {
      part.groups.push_back(cur);
      cur = {idx[k]};
    }
  }
  part.groups.push_back(cur);

  for (auto& grp : part.groups) {
    double diam = cfg.pos[grp.back()] - cfg.pos[grp.front()];
    if (diam >= d) return std::nullopt;  // run spreads past the scale
    int q = 0;
    for (size_t k : grp) q += cfg.sign[k];
    part.charge.push_back(q);
  }
  return part;
}

ConfigSampler uniform_config_sampler(const KernelFamily& fam, int n,
                                     int charge_class) {
  if (n < 1) throw ConfigError("sampler needs n >= 1");
  if (charge_class == 0 && n % 2 != 0)
    throw ConfigError("neutral sampler needs an even particle count");
  double a = fam.a(), b = fam.b();
  Density dens = fam.density();
  return [=](RngStream& rng, double) {
    ChargeConfig cfg;
    cfg.pos.resize((size_t)n);
    cfg.sign.resize((size_t)n);
    for (int k = 0; k < n; k++)
      cfg.pos[(size_t)k] = dens.sample(a, b, rng.uniform());
    if (charge_class == 0) {
      for (int k = 0; k < n; k++) cfg.sign[(size_t)k] = k < n / 2 ? -1 : 1;
    } else {
      for (;;) {
        for (int k = 0; k < n; k++)
          cfg.sign[(size_t)k] = rng.next_u64() & 1 ? 1 : -1;
        if (charge_class < 0 || cfg.total_charge() != 0) break;
      }
    }
    return cfg;
  };
}

ConfigSampler dipole_config_sampler(const KernelFamily& fam, int n,
                                    double gamma) {
  if (n < 2 || n % 2 != 0)
    throw ConfigError("dipole sampler needs an even particle count >= 2");
  double a = fam.a(), b = fam.b();
  return [=](RngStream& rng, double u) {
    double sep = std::exp(-gamma * u);
    if (sep > 0.5 * (b - a)) sep = 0.5 * (b - a);
    ChargeConfig cfg;
    for (int p = 0; p < n / 2; p++) {
      double c = rng.uniform(a + 0.5 * sep, b - 0.5 * sep);
      cfg.pos.push_back(c - 0.5 * sep);
      cfg.sign.push_back(-1);
      cfg.pos.push_back(c + 0.5 * sep);
      cfg.sign.push_back(1);
    }
    return cfg;
  };
}

namespace {

struct SlackAcc {
  double min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  size_t count = 0;

  void add(double v) {
    min = std::min(min, v);
    sum += v;
    count++;
  }
  void merge(const SlackAcc& o) {
    min = std::min(min, o.min);
    sum += o.sum;
    count += o.count;
  }
};

}  // namespace

AuditReport onsager_audit(const KernelFamily& fam, const ConfigSampler& draw,
                          int i, double s, const std::vector<double>& u_list,
                          size_t samples, uint64_t seed, int workers) {
  if (samples < 1) throw ConfigError("audit needs samples >= 1");
  for (double u : u_list)
    if (!(u > s)) throw ConfigError("audit cutoffs must exceed s");

  AuditReport rep;
  rep.s = s;
  rep.i = i;
  const size_t chunk = 256;
  size_t nchunks = (samples + chunk - 1) / chunk;

  for (double u : u_list) {
    // classes: 0 baseline, 1 neutral-refined, 2 non-neutral
    auto partials = parallel_map<std::array<SlackAcc, 3>>(
        (int)nchunks, workers, [&](int ci) {
          std::array<SlackAcc, 3> acc;
          size_t lo = (size_t)ci * chunk, hi = std::min(lo + chunk, samples);
          for (size_t id = lo; id < hi; id++) {
            RngStream rng(seed, id, 0);  // common draws across the u sweep
            ChargeConfig cfg = draw(rng, u);
            double U = potential_increment(fam, cfg, s, u);
            double n = (double)cfg.size();
            acc[0].add(U + n * (u - s));
            if (cfg.is_neutral()) {
              std::vector<double> p, m;
              for (size_t k = 0; k < cfg.size(); k++)
                (cfg.sign[k] > 0 ? p : m).push_back(cfg.pos[k]);
              double wm = std::max(wasserstein_matching(p, m).m, 1e-300);
              double bonus = std::max(0.0, -std::log(wm) - s);
              acc[1].add(U + (n - 1) * (u - s) + bonus);
            } else {
              acc[2].add(U + (n - 1) * (u - s));
            }
          }
          return acc;
        });
    std::array<SlackAcc, 3> total;
    for (auto& p : partials)  // chunk order: worker-independent sums
      for (int c = 0; c < 3; c++) total[(size_t)c].merge(p[(size_t)c]);

    const char* names[3] = {"baseline", "neutral-refined", "non-neutral"};
    for (int c = 0; c < 3; c++) {
      const SlackAcc& a = total[(size_t)c];
      if (!a.count) continue;
      AuditRow row;
      row.u = u;
      row.inequality = names[c];
      row.min_slack = a.min;
      row.mean_slack = a.sum / (double)a.count;
      row.c_hat = std::max(0.0, -a.min);
      row.samples = a.count;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace sglab
