#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "optifab/types.hpp"

namespace optifab {

// Minimization sense throughout: a dominates b iff a_i <= b_i for all i and
// a_j < b_j for some j.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Exactly the nondominated subset; exact duplicates collapse to one
// representative. Rejects mixed dimensionalities and non-finite values.
std::vector<ObjectiveVector> pareto_filter(const std::vector<ObjectiveVector>& points);

// Drops points that do not strictly dominate the reference point (f_i < r_i
// for every i). Such points contribute zero hypervolume.
std::vector<ObjectiveVector> clip_to_reference(const std::vector<ObjectiveVector>& points,
                                               const ObjectiveVector& ref);

// Lebesgue measure of the union of boxes [f, ref] via recursive dimension
// sweep. Exact path; m <= 4 enforced.
double hypervolume_exact(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref);

struct McEstimate {
  double value = 0;
  double std_error = 0;
};

// Monte-Carlo estimate over the box [lower, ref] where lower is the
// componentwise minimum of the clipped front unless an explicit anchor is
// given. A fixed anchor plus a fixed seed makes the estimate monotone in
// archive growth, which the journal's hv tracking relies on.
McEstimate hypervolume_mc(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                          uint64_t samples, uint64_t seed,
                          const std::optional<ObjectiveVector>& lower_anchor = std::nullopt);

// Serial reference for the parallel estimator; must agree bit-for-bit.
McEstimate hypervolume_mc_serial(const std::vector<ObjectiveVector>& front,
                                 const ObjectiveVector& ref, uint64_t samples, uint64_t seed,
                                 const std::optional<ObjectiveVector>& lower_anchor = std::nullopt);

struct HvOptions {
  uint64_t mc_samples = 200000;
  uint64_t seed = 0;
  std::optional<ObjectiveVector> lower_anchor;
};

struct HvResult {
  double value = 0;
  double std_error = 0;  // 0 on the exact path
  bool exact = true;
};

// Exact sweep for m <= 4, Monte-Carlo beyond.
HvResult compute_hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                             const HvOptions& options);

// Incremental nondominated archive of valid trials.
class ParetoArchive {
 public:
  // Returns true when the point enters the archive (it was nondominated).
  bool insert(const ObjectiveVector& objectives);

  const std::vector<ObjectiveVector>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  size_t size() const { return points_.size(); }

  // Componentwise running min/max over every value ever inserted (valid
  // trials), dominated or not; the scalarization normalizes against these.
  const std::vector<double>& seen_min() const { return seen_min_; }
  const std::vector<double>& seen_max() const { return seen_max_; }

 private:
  std::vector<ObjectiveVector> points_;
  std::vector<double> seen_min_;
  std::vector<double> seen_max_;
};

}  // namespace optifab
