#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "optifab/types.hpp"

namespace optifab::testutil {

// O(k^2) reference domination filter (duplicates collapse).
inline std::vector<ObjectiveVector> brute_force_front(const std::vector<ObjectiveVector>& points) {
  auto dominates = [](const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return false;
      if (a[i] < b[i]) strict = true;
    }
    return strict;
  };
  std::vector<ObjectiveVector> front;
  for (size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < points.size() && keep; ++j) {
      if (i == j) continue;
      if (dominates(points[j], points[i])) keep = false;
      if (points[j] == points[i] && j < i) keep = false;
    }
    if (keep) front.push_back(points[i]);
  }
  return front;
}

// Inclusion-exclusion hypervolume over all nonempty subsets, enumerated by
// DFS with a running componentwise max. Exponential; fronts of <= 20 points.
inline double inclusion_exclusion_hv(const std::vector<ObjectiveVector>& front,
                                     const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> pts;
  for (const auto& p : front) {
    bool inside = true;
    for (size_t d = 0; d < ref.size(); ++d)
      if (!(p[d] < ref[d])) inside = false;
    if (inside) pts.push_back(p);
  }
  double total = 0.0;
  ObjectiveVector cur(ref.size(), -1e300);
  auto dfs = [&](auto&& self, size_t i, int count) -> void {
    if (i == pts.size()) {
      if (count == 0) return;
      double vol = 1.0;
      for (size_t d = 0; d < ref.size(); ++d) vol *= ref[d] - cur[d];
      total += (count % 2 == 1 ? 1.0 : -1.0) * vol;
      return;
    }
    self(self, i + 1, count);
    ObjectiveVector saved = cur;
    for (size_t d = 0; d < ref.size(); ++d) cur[d] = std::max(cur[d], pts[i][d]);
    self(self, i + 1, count + 1);
    cur = saved;
  };
  dfs(dfs, 0, 0);
  return total;
}

// Closed-form staircase hypervolume for m = 2: filter to the nondominated
// set, sort by x, sum the step rectangles.
inline double staircase_hv_2d(const std::vector<ObjectiveVector>& points,
                              const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> front = brute_force_front(points);
  std::erase_if(front, [&](const ObjectiveVector& p) {
    return !(p[0] < ref[0] && p[1] < ref[1]);
  });
  if (front.empty()) return 0.0;
  std::sort(front.begin(), front.end());
  double volume = 0.0;
  for (size_t i = 0; i < front.size(); ++i) {
    const double next_x = (i + 1 < front.size()) ? front[i + 1][0] : ref[0];
    volume += (next_x - front[i][0]) * (ref[1] - front[i][1]);
  }
  return volume;
}

}  // namespace optifab::testutil
