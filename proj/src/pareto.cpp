#include "optifab/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "optifab/rng.hpp"

namespace optifab {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strictly_better = false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<ObjectiveVector> pareto_filter(const std::vector<ObjectiveVector>& points) {
  if (points.empty()) return {};
  const size_t m = points[0].size();
  for (const auto& p : points) {
    if (p.size() != m) throw Error("pareto_filter: mixed objective dimensionalities");
    for (double v : p)
      if (!std::isfinite(v)) throw Error("pareto_filter: non-finite objective value");
  }
  std::vector<ObjectiveVector> front;
  for (size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < points.size() && keep; ++j) {
      if (i == j) continue;
      if (dominates(points[j], points[i])) keep = false;
      // Duplicate collapse: only the first occurrence survives.
      if (points[j] == points[i] && j < i) keep = false;
    }
    if (keep) front.push_back(points[i]);
  }
  return front;
}

std::vector<ObjectiveVector> clip_to_reference(const std::vector<ObjectiveVector>& points,
                                               const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> kept;
  for (const auto& p : points) {
    if (p.size() != ref.size()) throw Error("clip_to_reference: dimension mismatch");
    bool inside = true;
    for (size_t i = 0; i < p.size(); ++i)
      if (!(p[i] < ref[i])) inside = false;
    if (inside) kept.push_back(p);
  }
  return kept;
}

namespace {

// Recursive slab sweep on the last coordinate. Points must lie strictly
// below ref in every coordinate.
double sweep(std::vector<ObjectiveVector> points, const std::vector<double>& ref, size_t m) {
  if (points.empty()) return 0.0;
  if (m == 1) {
    double lowest = points[0][0];
    for (const auto& p : points) lowest = std::min(lowest, p[0]);
    return ref[0] - lowest;
  }
  std::sort(points.begin(), points.end(),
            [m](const ObjectiveVector& a, const ObjectiveVector& b) { return a[m - 1] < b[m - 1]; });
  std::vector<double> sub_ref(ref.begin(), ref.begin() + m - 1);
  double volume = 0.0;
  std::vector<ObjectiveVector> active;
  for (size_t i = 0; i < points.size(); ++i) {
    ObjectiveVector proj(points[i].begin(), points[i].begin() + m - 1);
    active.push_back(std::move(proj));
    // Points sharing the same last coordinate enter the same slab.
    if (i + 1 < points.size() && points[i + 1][m - 1] == points[i][m - 1]) continue;
    const double slab_lo = points[i][m - 1];
    const double slab_hi = (i + 1 < points.size()) ? points[i + 1][m - 1] : ref[m - 1];
    if (slab_hi > slab_lo) volume += (slab_hi - slab_lo) * sweep(active, sub_ref, m - 1);
  }
  return volume;
}

}  // namespace

double hypervolume_exact(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref) {
  const size_t m = ref.size();
  if (m > 4) throw Error("hypervolume_exact supports m <= 4; use the Monte-Carlo path");
  auto clipped = clip_to_reference(front, ref);
  if (clipped.empty()) return 0.0;
  return sweep(std::move(clipped), ref, m);
}

namespace {

McEstimate estimate_from_count(uint64_t dominated, uint64_t samples, double box_volume) {
  const double p_hat = static_cast<double>(dominated) / static_cast<double>(samples);
  McEstimate out;
  out.value = box_volume * p_hat;
  out.std_error = box_volume * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
  return out;
}

struct McBox {
  std::vector<double> lo;
  std::vector<double> width;
  double volume = 0;
};

std::optional<McBox> mc_box(const std::vector<ObjectiveVector>& clipped,
                            const ObjectiveVector& ref,
                            const std::optional<ObjectiveVector>& lower_anchor) {
  if (clipped.empty()) return std::nullopt;
  const size_t m = ref.size();
  McBox box;
  box.lo.assign(m, 0.0);
  for (size_t d = 0; d < m; ++d) {
    double lowest = clipped[0][d];
    for (const auto& p : clipped) lowest = std::min(lowest, p[d]);
    box.lo[d] = lower_anchor ? std::min((*lower_anchor)[d], lowest) : lowest;
  }
  box.width.assign(m, 0.0);
  box.volume = 1.0;
  for (size_t d = 0; d < m; ++d) {
    box.width[d] = ref[d] - box.lo[d];
    box.volume *= box.width[d];
  }
  return box;
}

inline bool sample_dominated(const std::vector<ObjectiveVector>& front, const double* s, size_t m) {
  for (const auto& p : front) {
    bool below = true;
    for (size_t d = 0; d < m; ++d) {
      if (p[d] > s[d]) {
        below = false;
        break;
      }
    }
    if (below) return true;
  }
  return false;
}

// Sample i is a pure function of (seed, i): parallel order cannot change it.
inline void draw_sample(uint64_t base, uint64_t index, const McBox& box, double* out, size_t m) {
  uint64_t x = base + index * 0x9e3779b97f4a7c15ULL;
  for (size_t d = 0; d < m; ++d) {
    const double u = static_cast<double>(Rng::splitmix64(x) >> 11) * 0x1.0p-53;
    out[d] = box.lo[d] + u * box.width[d];
  }
}

McEstimate mc_impl(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                   uint64_t samples, uint64_t seed,
                   const std::optional<ObjectiveVector>& lower_anchor, bool parallel) {
  if (samples < 1000) throw Error("hypervolume_mc requires samples >= 1000");
  const size_t m = ref.size();
  auto clipped = clip_to_reference(front, ref);
  auto box = mc_box(clipped, ref, lower_anchor);
  if (!box) return {0.0, 0.0};

  uint64_t x0 = seed;
  const uint64_t base = Rng::splitmix64(x0);
  uint64_t dominated = 0;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(+ : dominated)
    for (int64_t i = 0; i < static_cast<int64_t>(samples); ++i) {
      double s[8];
      draw_sample(base, static_cast<uint64_t>(i), *box, s, m);
      if (sample_dominated(clipped, s, m)) ++dominated;
    }
  } else {
    for (uint64_t i = 0; i < samples; ++i) {
      double s[8];
      draw_sample(base, i, *box, s, m);
      if (sample_dominated(clipped, s, m)) ++dominated;
    }
  }
  return estimate_from_count(dominated, samples, box->volume);
}

}  // namespace

McEstimate hypervolume_mc(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                          uint64_t samples, uint64_t seed,
                          const std::optional<ObjectiveVector>& lower_anchor) {
  if (ref.size() > 8) throw Error("hypervolume_mc supports m <= 8");
  return mc_impl(front, ref, samples, seed, lower_anchor, /*parallel=*/true);
}

McEstimate hypervolume_mc_serial(const std::vector<ObjectiveVector>& front,
                                 const ObjectiveVector& ref, uint64_t samples, uint64_t seed,
                                 const std::optional<ObjectiveVector>& lower_anchor) {
  if (ref.size() > 8) throw Error("hypervolume_mc supports m <= 8");
  return mc_impl(front, ref, samples, seed, lower_anchor, /*parallel=*/false);
}

HvResult compute_hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                             const HvOptions& options) {
  HvResult result;
  if (ref.size() <= 4) {
    result.value = hypervolume_exact(front, ref);
    result.std_error = 0.0;
    result.exact = true;
  } else {
    auto est = hypervolume_mc(front, ref, options.mc_samples, options.seed, options.lower_anchor);
    result.value = est.value;
    result.std_error = est.std_error;
    result.exact = false;
  }
  return result;
}

bool ParetoArchive::insert(const ObjectiveVector& objectives) {
  if (seen_min_.empty()) {
    seen_min_ = objectives;
    seen_max_ = objectives;
  } else {
    for (size_t i = 0; i < objectives.size(); ++i) {
      seen_min_[i] = std::min(seen_min_[i], objectives[i]);
      seen_max_[i] = std::max(seen_max_[i], objectives[i]);
    }
  }
  for (const auto& p : points_) {
    if (p == objectives) return false;  // duplicate of an archive member
    if (dominates(p, objectives)) return false;
  }
  std::erase_if(points_, [&](const ObjectiveVector& p) { return dominates(objectives, p); });
  points_.push_back(objectives);
  return true;
}

}  // namespace optifab
