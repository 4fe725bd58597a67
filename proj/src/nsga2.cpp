#include "optifab/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "optifab/pareto.hpp"

namespace optifab {
namespace nsga2 {

std::vector<int> fast_nondominated_sort(const std::vector<ObjectiveVector>& objectives) {
  const size_t p = objectives.size();
  std::vector<std::vector<size_t>> dominated_by(p);
  std::vector<int> domination_count(p, 0);
  std::vector<int> rank(p, -1);

  for (size_t i = 0; i < p; ++i) {
    for (size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      if (dominates(objectives[i], objectives[j])) dominated_by[i].push_back(j);
      else if (dominates(objectives[j], objectives[i])) ++domination_count[i];
    }
  }
  std::vector<size_t> current;
  for (size_t i = 0; i < p; ++i)
    if (domination_count[i] == 0) {
      rank[i] = 0;
      current.push_back(i);
    }
  int level = 0;
  while (!current.empty()) {
    std::vector<size_t> next;
    for (size_t i : current) {
      for (size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) {
          rank[j] = level + 1;
          next.push_back(j);
        }
      }
    }
    ++level;
    current = std::move(next);
  }
  return rank;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& objectives,
                                      const std::vector<size_t>& front) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(front.size(), 0.0);
  if (front.empty()) return distance;
  const size_t m = objectives[front[0]].size();
  if (front.size() <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  std::vector<size_t> order(front.size());
  for (size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      const double fa = objectives[front[a]][obj];
      const double fb = objectives[front[b]][obj];
      if (fa != fb) return fa < fb;
      return front[a] < front[b];
    });
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double span = objectives[front[order.back()]][obj] - objectives[front[order.front()]][obj];
    if (span <= 0.0) continue;
    for (size_t k = 1; k + 1 < order.size(); ++k) {
      if (distance[order[k]] == inf) continue;
      distance[order[k]] +=
          (objectives[front[order[k + 1]]][obj] - objectives[front[order[k - 1]]][obj]) / span;
    }
  }
  return distance;
}

namespace {

struct RankedMember {
  size_t index;
  int rank;
  double crowding;
};

std::vector<RankedMember> rank_population(const std::vector<Individual>& population) {
  std::vector<ObjectiveVector> objectives;
  objectives.reserve(population.size());
  for (const auto& ind : population) objectives.push_back(ind.objectives);
  const std::vector<int> ranks = fast_nondominated_sort(objectives);

  int max_rank = 0;
  for (int r : ranks) max_rank = std::max(max_rank, r);
  std::vector<RankedMember> members(population.size());
  for (size_t i = 0; i < population.size(); ++i) members[i] = {i, ranks[i], 0.0};
  for (int level = 0; level <= max_rank; ++level) {
    std::vector<size_t> front;
    for (size_t i = 0; i < ranks.size(); ++i)
      if (ranks[i] == level) front.push_back(i);
    const std::vector<double> crowd = crowding_distance(objectives, front);
    for (size_t k = 0; k < front.size(); ++k) members[front[k]].crowding = crowd[k];
  }
  return members;
}

}  // namespace

std::vector<Individual> environmental_selection(const std::vector<Individual>& merged,
                                                size_t target) {
  std::vector<RankedMember> members = rank_population(merged);
  std::sort(members.begin(), members.end(), [](const RankedMember& a, const RankedMember& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.crowding != b.crowding) return a.crowding > b.crowding;
    return a.index < b.index;
  });
  std::vector<Individual> survivors;
  survivors.reserve(std::min(target, merged.size()));
  for (size_t k = 0; k < members.size() && survivors.size() < target; ++k)
    survivors.push_back(merged[members[k].index]);
  return survivors;
}

namespace {

size_t tournament(const std::vector<RankedMember>& members, Rng& rng) {
  const size_t a = rng.uniform_index(members.size());
  const size_t b = rng.uniform_index(members.size());
  const RankedMember& ma = members[a];
  const RankedMember& mb = members[b];
  if (ma.rank != mb.rank) return ma.rank < mb.rank ? a : b;
  if (ma.crowding != mb.crowding) return ma.crowding > mb.crowding ? a : b;
  return std::min(a, b);
}

// Bounded simulated binary crossover (Deb & Agrawal).
void sbx(double parent1, double parent2, double lo, double hi, double eta, Rng& rng,
         double& child1, double& child2) {
  child1 = parent1;
  child2 = parent2;
  if (rng.uniform01() > 0.5) return;
  if (std::fabs(parent1 - parent2) < 1e-14) return;
  double y1 = std::min(parent1, parent2);
  double y2 = std::max(parent1, parent2);
  const double u = rng.uniform01();

  auto spread = [&](double beta) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
  };

  double beta = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
  double betaq = spread(beta);
  double c1 = 0.5 * ((y1 + y2) - betaq * (y2 - y1));

  beta = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
  betaq = spread(beta);
  double c2 = 0.5 * ((y1 + y2) + betaq * (y2 - y1));

  c1 = std::clamp(c1, lo, hi);
  c2 = std::clamp(c2, lo, hi);
  if (rng.uniform01() <= 0.5) std::swap(c1, c2);
  child1 = c1;
  child2 = c2;
}

// Bounded polynomial mutation.
double polynomial_mutation(double y, double lo, double hi, double eta, Rng& rng) {
  const double span = hi - lo;
  const double delta1 = (y - lo) / span;
  const double delta2 = (hi - y) / span;
  const double u = rng.uniform01();
  const double exponent = 1.0 / (eta + 1.0);
  double deltaq;
  if (u < 0.5) {
    const double xy = 1.0 - delta1;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
    deltaq = std::pow(val, exponent) - 1.0;
  } else {
    const double xy = 1.0 - delta2;
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
    deltaq = 1.0 - std::pow(val, exponent);
  }
  return std::clamp(y + deltaq * span, lo, hi);
}

}  // namespace

std::vector<DesignPoint> mogo_step(const std::vector<Individual>& population,
                                   const DesignSpace& space, Rng& rng,
                                   const VariationParams& params) {
  const size_t p = population.size();
  if (p < 4 || p % 2 != 0) throw Error("mogo_step requires an even population of >= 4");
  const size_t n = space.dimension();
  const double mutation_rate = 1.0 / static_cast<double>(n);

  const std::vector<RankedMember> members = rank_population(population);
  std::vector<DesignPoint> offspring;
  offspring.reserve(p);
  while (offspring.size() < p) {
    const Individual& pa = population[members[tournament(members, rng)].index];
    const Individual& pb = population[members[tournament(members, rng)].index];
    DesignPoint c1 = pa.design;
    DesignPoint c2 = pb.design;
    if (rng.uniform01() <= params.crossover_rate) {
      for (size_t d = 0; d < n; ++d)
        sbx(pa.design[d], pb.design[d], space.bounds[d].lo, space.bounds[d].hi,
            params.crossover_eta, rng, c1[d], c2[d]);
    }
    for (size_t d = 0; d < n; ++d) {
      if (rng.uniform01() <= mutation_rate)
        c1[d] = polynomial_mutation(c1[d], space.bounds[d].lo, space.bounds[d].hi,
                                    params.mutation_eta, rng);
      if (rng.uniform01() <= mutation_rate)
        c2[d] = polynomial_mutation(c2[d], space.bounds[d].lo, space.bounds[d].hi,
                                    params.mutation_eta, rng);
    }
    offspring.push_back(std::move(c1));
    offspring.push_back(std::move(c2));
  }
  return offspring;
}

}  // namespace nsga2
}  // namespace optifab
