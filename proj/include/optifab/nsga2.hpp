#pragma once

#include <vector>

#include "optifab/rng.hpp"
#include "optifab/types.hpp"

namespace optifab {
namespace nsga2 {

struct Individual {
  DesignPoint design;
  ObjectiveVector objectives;
};

// Front rank per individual (0 = nondominated).
std::vector<int> fast_nondominated_sort(const std::vector<ObjectiveVector>& objectives);

// Crowding distance for the members of one front (indices into `objectives`).
// Objective-extreme members get +infinity.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& objectives,
                                      const std::vector<size_t>& front);

// Keeps `target` individuals by (front rank, crowding distance), the NSGA-II
// environmental selection. Ties break toward the lower input index.
std::vector<Individual> environmental_selection(const std::vector<Individual>& merged,
                                                size_t target);

struct VariationParams {
  double crossover_eta = 15.0;   // eta_c
  double crossover_rate = 0.9;
  double mutation_eta = 20.0;    // eta_m
  // mutation rate defaults to 1/n
};

// One generation of variation: binary tournament selection on (rank,
// crowding), simulated binary crossover, polynomial mutation. Output size
// equals input size; population must be even and >= 4.
std::vector<DesignPoint> mogo_step(const std::vector<Individual>& population,
                                   const DesignSpace& space, Rng& rng,
                                   const VariationParams& params = {});

}  // namespace nsga2
}  // namespace optifab
