#include "renorm.hpp"

#include <cmath>
#include <vector>

#include "../errors.hpp"
#include "../stats.hpp"
#include "thresholds.hpp"
#include "transforms.hpp"

namespace sglab {

std::vector<double> stream_martingale_values(const KernelFamily& fam,
                                             const Grid& grid, double beta,
                                             double t, size_t replicas,
                                             uint64_t master_seed, size_t block,
                                             int workers) {
  std::vector<double> out(replicas);
  StreamOptions sopts;
  sopts.block = block;
  sopts.workers = workers;
  std::vector<std::complex<double>> buf;
  // per-block scratch lives on the worker stack via thread_local-free lambda:
  // martingale_block writes straight into the per-replica slots
  for_each_field_block(
      fam, grid, {0.0, t}, replicas, master_seed, sopts,
      [&](size_t, size_t r0, const Eigen::MatrixXd& X) {
        std::vector<std::complex<double>> vals((size_t)X.cols());
        martingale_block(X, grid, t, beta, {}, {}, vals.data());
        for (size_t c = 0; c < vals.size(); c++)
          out[r0 + c] = vals[c].real();
      });
  return out;
}

static double mean_eval(const std::vector<double>& sums, size_t n, void*) {
  return sums[0] / (double)n;
}

RenormResult renormalized_partition(const KernelFamily& fam, double alpha,
                                    double beta, double t, const Grid& grid,
                                    const RenormOptions& opts) {
  auto th = threshold_index(beta);  // refuses beta >= sqrt(2)
  RenormResult res;
  res.counterterms = th.counterterms;
  if (2 * th.counterterms > 6)
    throw ResourceError(
        "renormalization needs even cumulants beyond order 6; beta is too "
        "close to sqrt(2) for the quadrature budget");

  if (th.counterterms > 0) {
    int top = 2 * th.counterterms;
    std::vector<double> moments;
    for (int i = 1; i <= top; i++)
      moments.push_back(moment_quadrature(fam, beta, t, i, grid));
    auto cums = moments_to_cumulants(moments);
    for (int i = 1; i <= th.counterterms; i++) {
      double c2i = cums[(size_t)(2 * i - 1)];
      res.c_even.push_back(c2i);
      double fact = 1.0;
      for (int k = 2; k <= 2 * i; k++) fact *= k;
      res.counterterm_log += std::pow(alpha, 2 * i) / fact * c2i;
    }
  }

  auto mvals = stream_martingale_values(fam, grid, beta, t, opts.replicas,
                                        opts.master_seed, opts.block,
                                        opts.workers);
  std::vector<double> expvals(mvals.size());
  for (size_t i = 0; i < mvals.size(); i++)
    expvals[i] = std::exp(alpha * mvals[i]);

  auto jk = jackknife_sums({expvals}, opts.jk_blocks, mean_eval, nullptr);
  res.mean_exp = jk.value;
  res.mean_exp_se = jk.se;
  double damp = std::exp(-res.counterterm_log);
  res.value = res.mean_exp * damp;
  res.se = res.mean_exp_se * damp;
  if (!std::isfinite(res.value))
    throw NumericalError("renormalized partition value is not finite");
  return res;
}

std::vector<RenormResult> renorm_flow(const KernelFamily& fam, double alpha,
                                      double beta,
                                      const std::vector<double>& t_list,
                                      const Grid& grid,
                                      const RenormOptions& opts) {
  auto th = threshold_index(beta);
  if (2 * th.counterterms > 6)
    throw ResourceError(
        "renormalization needs even cumulants beyond order 6; beta is too "
        "close to sqrt(2) for the quadrature budget");
  if (t_list.empty() || t_list.front() <= 0.0)
    throw ConfigError("flow cutoffs must be positive");

  size_t K = t_list.size();
  std::vector<std::vector<double>> expvals(K,
                                           std::vector<double>(opts.replicas));
  StreamOptions sopts;
  sopts.block = opts.block;
  sopts.workers = opts.workers;
  for_each_field_block(
      fam, grid, t_list, opts.replicas, opts.master_seed, sopts,
      [&](size_t k, size_t r0, const Eigen::MatrixXd& X) {
        std::vector<std::complex<double>> vals((size_t)X.cols());
        martingale_block(X, grid, t_list[k], beta, {}, {}, vals.data());
        for (size_t c = 0; c < vals.size(); c++)
          expvals[k][r0 + c] = std::exp(alpha * vals[c].real());
      });

  std::vector<RenormResult> out(K);
  for (size_t k = 0; k < K; k++) {
    RenormResult& res = out[k];
    res.counterterms = th.counterterms;
    if (th.counterterms > 0) {
      int top = 2 * th.counterterms;
      std::vector<double> moments;
      for (int i = 1; i <= top; i++)
        moments.push_back(moment_quadrature(fam, beta, t_list[k], i, grid));
      auto cums = moments_to_cumulants(moments);
      for (int i = 1; i <= th.counterterms; i++) {
        double c2i = cums[(size_t)(2 * i - 1)];
        res.c_even.push_back(c2i);
        double fact = 1.0;
        for (int j = 2; j <= 2 * i; j++) fact *= j;
        res.counterterm_log += std::pow(alpha, 2 * i) / fact * c2i;
      }
    }
    auto jk = jackknife_sums({expvals[k]}, opts.jk_blocks, mean_eval, nullptr);
    res.mean_exp = jk.value;
    res.mean_exp_se = jk.se;
    double damp = std::exp(-res.counterterm_log);
    res.value = res.mean_exp * damp;
    res.se = res.mean_exp_se * damp;
    if (!std::isfinite(res.value))
      throw NumericalError("renormalized partition value is not finite");
  }
  return out;
}

}  // namespace sglab
