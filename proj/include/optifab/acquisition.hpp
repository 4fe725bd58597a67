#pragma once

#include <cstdint>
#include <vector>

#include "optifab/gp.hpp"
#include "optifab/rng.hpp"
#include "optifab/types.hpp"

namespace optifab {

// Augmented Chebyshev scalarization (ParEGO): max_j(w_j f_j) + rho sum_j(w_j f_j).
// Objectives are expected normalized to [0,1]; weights on the unit simplex.
double chebyshev_scalarize(const ObjectiveVector& objectives, const std::vector<double>& weights,
                           double rho);

// Componentwise (f - lo) / (hi - lo); a degenerate component (hi <= lo) maps
// to zero.
ObjectiveVector normalize_objectives(const ObjectiveVector& f, const std::vector<double>& lo,
                                     const std::vector<double>& hi);

// Uniform draw from the unit simplex (Dirichlet(1,...,1)).
std::vector<double> simplex_weight(Rng& rng, size_t m);

// Expected improvement for minimization: EI = (f* - mu) Phi(z) + sigma phi(z),
// z = (f* - mu) / sigma. sigma below 1e-12 is treated as zero, giving
// max(f* - mu, 0).
double expected_improvement(double mean, double stddev, double best);

struct AcquisitionResult {
  std::vector<double> point;  // unit-hypercube coordinates
  double value = 0.0;
};

struct AcquisitionBudget {
  int probes = 1024;
  int refine_top = 8;
  int refine_sweeps = 24;
};

// Maximizes EI over the unit hypercube: a random probe sweep followed by
// coordinate-wise refinement of the best probes. Ties break toward the
// lowest candidate index. Deterministic given the rng substream.
AcquisitionResult maximize_acquisition(const GaussianProcess& gp, double best_value, size_t dim,
                                       Rng probe_rng, const AcquisitionBudget& budget = {});

}  // namespace optifab
