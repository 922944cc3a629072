#include "gas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "../cumulants/quad.hpp"
#include "../errors.hpp"
#include "../stats.hpp"

namespace sglab {

namespace {

// Pairwise interaction of a trial particle (x, sgn) with every particle in
// cfg except `skip`, times beta^2. skip = npos means "interact with all".
double interaction(const KernelFamily& fam, double beta2, double t,
                   const ChargeConfig& cfg, double x, int sgn, size_t skip) {
  if (beta2 == 0.0 || cfg.size() == 0) return 0.0;
  double acc = 0.0;
  for (size_t l = 0; l < cfg.size(); ++l) {
    if (l == skip) continue;
    acc += static_cast<double>(sgn * cfg.sign[l]) * fam.k(t, x, cfg.pos[l]);
  }
  return beta2 * acc;
}

double reflect_into(double y, double a, double b) {
  const double period = 2.0 * (b - a);
  double z = std::fmod(y - a, period);
  if (z < 0.0) z += period;
  return a + (z <= b - a ? z : period - z);
}

constexpr size_t kNoSkip = std::numeric_limits<size_t>::max();

}  // namespace

TruncatedPartition truncated_partition(const KernelFamily& fam,
                                       double alpha_gas, double beta, double t,
                                       int n_max, const Grid& grid,
                                       int workers) {
  if (alpha_gas < 0.0) throw ConfigError("gas activity must be nonnegative");
  if (n_max < 0) throw ConfigError("partition order must be nonnegative");
  if (n_max > 8)
    throw ResourceError("partition series is limited to 8 particles");

  TruncatedPartition out;
  out.terms.assign(static_cast<size_t>(n_max) + 1, 0.0);
  out.terms[0] = 1.0;
  if (alpha_gas == 0.0 || n_max == 0) {
    out.value = 1.0;
    out.last_term = n_max == 0 ? 1.0 : 0.0;
    return out;
  }

  // panel/order pairs for the internally coarsened high-order grids
  static const int coarse[9][2] = {{0, 0}, {0, 0}, {0, 0}, {32, 4}, {16, 4},
                                   {12, 4}, {6, 4},  {6, 3}, {4, 4}};

  TensorQuadOptions topts;
  topts.max_order = 8;
  topts.workers = workers;

  double log_fact = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    log_fact += std::log(static_cast<double>(n));
    double m;
    if (n <= 2) {
      m = moment_quadrature(fam, beta, t, n, grid, topts);
    } else {
      Grid g = Grid::gauss(fam, coarse[n][0], coarse[n][1]);
      m = moment_quadrature(fam, beta, t, n, g, topts);
    }
    const double lw = n * std::log(2.0 * alpha_gas) - log_fact;
    out.terms[static_cast<size_t>(n)] = std::exp(lw) * m;
  }
  for (double v : out.terms) out.value += v;
  out.last_term = std::abs(out.terms.back());
  if (!std::isfinite(out.value) || out.value <= 0.0)
    throw NumericalError("partition series produced a non-positive value");
  return out;
}

double gas_log_pi(const KernelFamily& fam, double alpha_gas, double beta,
                  double t, const ChargeConfig& cfg) {
  if (alpha_gas <= 0.0) throw ConfigError("gas activity must be positive");
  const double beta2 = beta * beta;
  double lp = static_cast<double>(cfg.size()) * std::log(alpha_gas);
  for (size_t k = 0; k < cfg.size(); ++k) {
    lp += std::log(fam.density().value(cfg.pos[k]));
    // add each pair once
    lp -= interaction(fam, beta2, t, cfg, cfg.pos[k], cfg.sign[k], k) / 2.0;
  }
  return lp;
}

double insert_log_accept(const KernelFamily& fam, double alpha_gas, double beta,
                         double t, const ChargeConfig& cfg, double x_new,
                         int sign_new) {
  if (alpha_gas <= 0.0) throw ConfigError("gas activity must be positive");
  const double dH =
      interaction(fam, beta * beta, t, cfg, x_new, sign_new, kNoSkip);
  const double log_a = std::log(2.0 * alpha_gas * fam.mass()) - dH -
                       std::log(static_cast<double>(cfg.size() + 1));
  return std::min(0.0, log_a);
}

double delete_log_accept(const KernelFamily& fam, double alpha_gas, double beta,
                         double t, const ChargeConfig& cfg, size_t index) {
  if (alpha_gas <= 0.0) throw ConfigError("gas activity must be positive");
  if (index >= cfg.size()) throw ConfigError("delete index out of range");
  const double dH = -interaction(fam, beta * beta, t, cfg, cfg.pos[index],
                                 cfg.sign[index], index);
  const double log_a = std::log(static_cast<double>(cfg.size())) - dH -
                       std::log(2.0 * alpha_gas * fam.mass());
  return std::min(0.0, log_a);
}

double displace_log_accept(const KernelFamily& fam, double beta, double t,
                           const ChargeConfig& cfg, size_t index,
                           double x_new) {
  if (index >= cfg.size()) throw ConfigError("displace index out of range");
  const double beta2 = beta * beta;
  const int sgn = cfg.sign[index];
  const double dH = interaction(fam, beta2, t, cfg, x_new, sgn, index) -
                    interaction(fam, beta2, t, cfg, cfg.pos[index], sgn, index);
  const double gnew = fam.density().value(x_new);
  const double gold = fam.density().value(cfg.pos[index]);
  if (gnew <= 0.0) return -std::numeric_limits<double>::infinity();
  const double log_a = -dH + std::log(gnew) - std::log(gold);
  return std::min(0.0, log_a);
}

GasChain::GasChain(const KernelFamily& fam, double alpha_gas, double beta,
                   double t, const GasChainOptions& opts)
    : fam_(&fam),
      alpha_(alpha_gas),
      beta2_(beta * beta),
      t_(t),
      sigma_(opts.displace_sigma_frac * fam.length()),
      opts_(opts),
      // distinct stream tag so a chain and a field ensemble can share one
      // master seed without replica-0 collisions
      rng_(opts.seed, 0x676173ull, 0) {
  if (alpha_gas <= 0.0) throw ConfigError("gas chain needs a positive activity");
  if (beta < 0.0) throw ConfigError("coupling must be nonnegative");
  if (t < 0.0) throw ConfigError("depth must be nonnegative");
  if (opts.p_insert < 0.0 || opts.p_delete < 0.0 ||
      opts.p_insert + opts.p_delete > 1.0)
    throw ConfigError("move probabilities must be nonnegative with sum <= 1");
  if (opts.displace_sigma_frac <= 0.0)
    throw ConfigError("displacement width must be positive");
  if (opts.thinning == 0) throw ConfigError("thinning must be at least 1");
  mass_ = fam.mass();
}

double GasChain::pair_energy(double x, int sgn, size_t skip) const {
  return interaction(*fam_, beta2_, t_, cfg_, x, sgn, skip);
}

void GasChain::step() {
  ++steps_;
  const double mv = rng_.uniform();
  const size_t n = cfg_.size();
  const double a = fam_->a(), b = fam_->b();

  if (mv < opts_.p_insert) {
    ++insert_stats.proposed;
    const double x = fam_->density().sample(a, b, rng_.uniform());
    const int s = rng_.uniform() < 0.5 ? 1 : -1;
    const double dH = pair_energy(x, s, kNoSkip);
    const double log_a = std::log(2.0 * alpha_ * mass_) - dH -
                         std::log(static_cast<double>(n + 1));
    if (log_a >= 0.0 || std::log(rng_.uniform()) < log_a) {
      cfg_.pos.push_back(x);
      cfg_.sign.push_back(s);
      H_ += dH;
      ++insert_stats.accepted;
    }
  } else if (mv < opts_.p_insert + opts_.p_delete) {
    ++delete_stats.proposed;
    if (n == 0) return;  // counted, rejected
    const size_t k = rng_.below(n);
    const double dH = -pair_energy(cfg_.pos[k], cfg_.sign[k], k);
    const double log_a = std::log(static_cast<double>(n)) - dH -
                         std::log(2.0 * alpha_ * mass_);
    if (log_a >= 0.0 || std::log(rng_.uniform()) < log_a) {
      cfg_.pos.erase(cfg_.pos.begin() + static_cast<std::ptrdiff_t>(k));
      cfg_.sign.erase(cfg_.sign.begin() + static_cast<std::ptrdiff_t>(k));
      H_ += dH;
      ++delete_stats.accepted;
    }
  } else {
    ++displace_stats.proposed;
    if (n == 0) return;
    const size_t k = rng_.below(n);
    const double xold = cfg_.pos[k];
    const double xnew = reflect_into(xold + sigma_ * rng_.normal(), a, b);
    const int sgn = cfg_.sign[k];
    const double dH =
        pair_energy(xnew, sgn, k) - pair_energy(xold, sgn, k);
    const double gnew = fam_->density().value(xnew);
    const double gold = fam_->density().value(xold);
    double log_a;
    if (gnew <= 0.0) {
      log_a = -std::numeric_limits<double>::infinity();
    } else {
      log_a = -dH + std::log(gnew) - std::log(gold);
    }
    if (log_a >= 0.0 || std::log(rng_.uniform()) < log_a) {
      cfg_.pos[k] = xnew;
      H_ += dH;
      ++displace_stats.accepted;
    }
  }
}

GasRunResult run_gas_chain(const KernelFamily& fam, double alpha_gas,
                           double beta, double t, size_t n_samples,
                           const GasChainOptions& opts, bool keep_samples) {
  if (n_samples == 0) throw ConfigError("chain needs at least one sample");
  GasChain chain(fam, alpha_gas, beta, t, opts);
  for (size_t i = 0; i < opts.burn_in; ++i) chain.step();

  GasRunResult out;
  out.n_series.reserve(n_samples);
  if (keep_samples) out.samples.reserve(n_samples);
  for (size_t s = 0; s < n_samples; ++s) {
    for (size_t j = 0; j < opts.thinning; ++j) chain.step();
    out.n_series.push_back(static_cast<double>(chain.current().size()));
    if (keep_samples) out.samples.push_back(chain.current());
  }
  auto ms = batch_mean_se(out.n_series, 50);
  out.mean_n = ms.mean;
  out.mean_n_se = ms.se;
  out.tau_int = integrated_autocorr_time(out.n_series);
  out.insert_stats = chain.insert_stats;
  out.delete_stats = chain.delete_stats;
  out.displace_stats = chain.displace_stats;
  out.steps = chain.steps_taken();
  return out;
}

}  // namespace sglab
