#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "optifab/gp.hpp"
#include "optifab/nsga2.hpp"
#include "optifab/pareto.hpp"
#include "optifab/rng.hpp"
#include "optifab/types.hpp"

namespace optifab {

struct TellOutcome {
  TrialStatus status = TrialStatus::kValid;  // valid | invalid | failed
  std::optional<ObjectiveVector> objectives;

  static TellOutcome valid(ObjectiveVector f) {
    return {TrialStatus::kValid, std::move(f)};
  }
  static TellOutcome invalid() { return {TrialStatus::kInvalid, std::nullopt}; }
  static TellOutcome failed() { return {TrialStatus::kFailed, std::nullopt}; }
};

struct SurrogateSnapshot {
  std::vector<std::optional<GpHyperparams>> per_objective;
  int64_t training_count = 0;  // valid trials feeding the GPs
  int64_t archive_size = 0;
  std::vector<double> norm_lo;
  std::vector<double> norm_hi;
  bool norm_valid = false;
};

// Ask/tell optimization engine. A single logical actor: propose/tell
// serialize through one mutex; snapshot readers may run concurrently.
class Optimizer {
 public:
  // kind: "model_refit" or "warning"; payload is journal-ready.
  using EventHook = std::function<void(const std::string& kind, const Json& payload)>;

  Optimizer(DesignSpace space, size_t objective_count, OptimizerConfig config);

  void set_event_hook(EventHook hook) { event_hook_ = std::move(hook); }

  // Returns q new pending trials with consecutive ids. Rejects q < 1 and
  // proposing past max_trials.
  std::vector<TrialRecord> propose(int q);

  void tell(int64_t trial_id, const TellOutcome& outcome);

  // Resume support: re-register a proposal recorded by a previous process.
  // Must arrive in trial-id order before any new propose() call.
  void restore_proposal(int64_t trial_id, const DesignPoint& design);

  std::vector<ObjectiveVector> archive_points() const;
  TrialRecord trial(int64_t trial_id) const;
  int64_t proposed_count() const;
  int64_t finalized_count() const;
  SurrogateSnapshot surrogate() const;
  const DesignSpace& space() const { return space_; }
  size_t objective_count() const { return objective_count_; }
  const OptimizerConfig& config() const { return config_; }

  // Deterministic substream tags; tests re-derive proposal internals from
  // these plus the public seed.
  static constexpr const char* kWeightTag = "parego-weight";
  static constexpr const char* kScalarizedFitTag = "scalarized-fit";
  static constexpr const char* kProbeTag = "probe";
  static constexpr const char* kObjectiveFitTag = "objective-fit";
  static constexpr const char* kMogoVarTag = "mogo-var";

 private:
  DesignPoint propose_one_locked(int64_t trial_id);
  DesignPoint propose_mobo_locked(int64_t trial_id);
  void prepare_mogo_batch_locked(int64_t first_trial_id, int count);
  void finalize_tell_locked(TrialRecord& record, const TellOutcome& outcome);
  void maybe_refit_locked();
  void emit(const std::string& kind, const Json& payload);

  DesignSpace space_;
  size_t objective_count_;
  OptimizerConfig config_;
  int init_count_;

  mutable std::shared_mutex mu_;
  std::vector<TrialRecord> trials_;
  int64_t finalized_ = 0;
  ParetoArchive archive_;

  // Valid-trial training data; inputs rescaled to the unit hypercube.
  std::vector<std::vector<double>> train_inputs_;
  std::vector<ObjectiveVector> train_objectives_;

  std::vector<std::optional<GpHyperparams>> objective_hyper_;
  std::vector<double> norm_lo_;
  std::vector<double> norm_hi_;
  bool norm_valid_ = false;

  HaltonSequence halton_;

  // MOGO generational state.
  std::vector<nsga2::Individual> mogo_parents_;
  std::vector<DesignPoint> mogo_pending_batch_;
  std::vector<nsga2::Individual> mogo_generation_valid_;
  int64_t mogo_generation_told_ = 0;

  EventHook event_hook_;
};

}  // namespace optifab
