#include "mc.hpp"

#include "../errors.hpp"
#include "kstat.hpp"

namespace sglab {

CumulantReport mc_cumulants(const FieldEnsemble& ens, double beta,
                            size_t slab_index, int order_max) {
  if (order_max < 1 || order_max > 6)
    throw ResourceError("monte-carlo cumulants are limited to orders 1..6");
  if (ens.replicas < 1000)
    throw ConfigError("monte-carlo cumulants need at least 1000 replicas");

  auto vals = evaluate_martingale(ens, beta, slab_index);
  std::vector<double> xs(vals.size());
  for (size_t i = 0; i < vals.size(); i++) xs[i] = vals[i].real();

  auto ks = k_statistics(xs, order_max, 50);
  CumulantReport rep;
  rep.beta = beta;
  double t = ens.cutoffs[slab_index];
  for (int i = 1; i <= order_max; i++)
    rep.points.push_back(
        {t, i, ks.k[(size_t)i - 1], ks.se[(size_t)i - 1], "monte-carlo"});
  return rep;
}

}  // namespace sglab
