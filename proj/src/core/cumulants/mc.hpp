#pragma once
#include "../ensemble.hpp"
#include "curve.hpp"

namespace sglab {

// Unbiased cumulant estimates C_1..C_order_max of the depth-t observable from
// per-replica martingale values, with delete-one-block jackknife errors.
// Orders above 6 are refused (bias control degrades), as are ensembles with
// fewer than 1000 replicas.
CumulantReport mc_cumulants(const FieldEnsemble& ens, double beta,
                            size_t slab_index, int order_max);

}  // namespace sglab
