#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optifab/json_util.hpp"

namespace optifab {

using DesignPoint = std::vector<double>;
using ObjectiveVector = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Box-bounded design space. Coordinates are stored in problem units; the
// optimizer rescales to the unit hypercube internally.
struct DesignSpace {
  std::vector<Interval> bounds;

  size_t dimension() const { return bounds.size(); }

  void validate() const {
    if (bounds.empty()) throw Error("design space must have dimension >= 1");
    for (const auto& b : bounds)
      if (!(b.lo < b.hi)) throw Error("design space bounds require lo < hi");
  }

  bool contains(const DesignPoint& x) const {
    if (x.size() != bounds.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < bounds[i].lo || x[i] > bounds[i].hi) return false;
    return true;
  }

  std::vector<double> to_unit(const DesignPoint& x) const {
    std::vector<double> u(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      u[i] = (x[i] - bounds[i].lo) / (bounds[i].hi - bounds[i].lo);
    return u;
  }

  DesignPoint from_unit(const std::vector<double>& u) const {
    DesignPoint x(u.size());
    for (size_t i = 0; i < u.size(); ++i)
      x[i] = bounds[i].lo + u[i] * (bounds[i].hi - bounds[i].lo);
    return x;
  }
};

enum class TrialStatus { kPending, kRunning, kValid, kInvalid, kFailed };

const char* to_string(TrialStatus s);
TrialStatus trial_status_from_string(const std::string& s);

// Per-trial timestamps (wall seconds). Zero means "not yet".
struct TimingTrace {
  double proposed_at = 0;
  double submitted_at = 0;
  double started_at = 0;
  double finished_at = 0;
  double received_at = 0;
  double finalized_at = 0;
  // Share of the batch's proposal wall time attributed to this trial.
  double generation_seconds = 0;
};

struct TrialRecord {
  int64_t trial_id = -1;
  DesignPoint design;
  std::optional<ObjectiveVector> objectives;
  TrialStatus status = TrialStatus::kPending;
  int attempt_count = 0;
  TimingTrace timing;

  bool finalized() const {
    return status == TrialStatus::kValid || status == TrialStatus::kInvalid ||
           status == TrialStatus::kFailed;
  }
};

enum class Strategy { kMobo, kMogo, kRandom };
enum class GenerationMode { kSynchronous, kAsynchronous };

Strategy strategy_from_string(const std::string& s);
const char* to_string(Strategy s);

struct OptimizerConfig {
  Strategy strategy = Strategy::kMobo;
  int batch_size = 4;          // q
  int init_count = 0;          // 0 = default min(2n, 32)
  int max_trials = 40;
  uint64_t rng_seed = 12345;
  double scalarization_rho = 0.05;
  int acquisition_restarts = 16;
  GenerationMode generation_mode = GenerationMode::kSynchronous;

  int resolved_init_count(size_t dimension) const {
    if (init_count > 0) return init_count;
    return static_cast<int>(std::min<size_t>(2 * dimension, 32));
  }

  void validate(size_t /*dimension*/) const {
    if (batch_size < 1) throw ConfigError("optimizer.batch_size must be >= 1");
    if (max_trials < 1) throw ConfigError("optimizer.max_trials must be >= 1");
    if (init_count > max_trials)
      throw ConfigError("optimizer.init_count must be <= optimizer.max_trials");
    if (acquisition_restarts < 1)
      throw ConfigError("optimizer.acquisition_restarts must be >= 1");
    if (strategy == Strategy::kMogo) {
      if (batch_size < 4 || batch_size % 2 != 0)
        throw ConfigError("mogo population (optimizer.batch_size) must be even and >= 4");
    }
  }
};

}  // namespace optifab
