#include "optifab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "optifab/acquisition.hpp"
#include "optifab/clock.hpp"
#include "optifab/logging.hpp"

namespace optifab {

namespace {

bool outcomes_equal(const TrialRecord& record, const TellOutcome& outcome) {
  if (record.status != outcome.status) return false;
  if (record.objectives.has_value() != outcome.objectives.has_value()) return false;
  if (record.objectives && *record.objectives != *outcome.objectives) return false;
  return true;
}

}  // namespace

Optimizer::Optimizer(DesignSpace space, size_t objective_count, OptimizerConfig config)
    : space_(std::move(space)),
      objective_count_(objective_count),
      config_(config),
      halton_(space_.dimension(), config.rng_seed) {
  space_.validate();
  if (objective_count_ < 2) throw ConfigError("optimizer requires >= 2 objectives");
  config_.validate(space_.dimension());
  init_count_ = config_.resolved_init_count(space_.dimension());
  if (config_.strategy == Strategy::kMogo) {
    if (config_.generation_mode != GenerationMode::kSynchronous)
      throw ConfigError("mogo requires synchronous generation mode");
    if (config_.max_trials % config_.batch_size != 0)
      throw ConfigError("mogo requires max_trials divisible by the population size");
    init_count_ = config_.batch_size;  // generation zero
  }
  objective_hyper_.assign(objective_count_, std::nullopt);
}

std::vector<TrialRecord> Optimizer::propose(int q) {
  if (q < 1) throw Error("propose requires q >= 1");
  std::unique_lock lock(mu_);
  const int64_t first_id = static_cast<int64_t>(trials_.size());
  if (first_id + q > config_.max_trials)
    throw Error("propose would exceed max_trials (" + std::to_string(config_.max_trials) + ")");

  const double t0 = now_wall();
  if (config_.strategy == Strategy::kMogo) prepare_mogo_batch_locked(first_id, q);

  std::vector<TrialRecord> batch;
  batch.reserve(static_cast<size_t>(q));
  for (int k = 0; k < q; ++k) {
    TrialRecord record;
    record.trial_id = first_id + k;
    record.design = propose_one_locked(record.trial_id);
    record.status = TrialStatus::kPending;
    batch.push_back(record);
  }
  const double elapsed = now_wall() - t0;
  const double proposed_at = now_wall();
  for (auto& record : batch) {
    record.timing.proposed_at = proposed_at;
    record.timing.generation_seconds = elapsed / static_cast<double>(q);
    trials_.push_back(record);
  }
  return batch;
}

DesignPoint Optimizer::propose_one_locked(int64_t trial_id) {
  switch (config_.strategy) {
    case Strategy::kRandom: {
      Rng rng = Rng::substream(config_.rng_seed, "random-search", static_cast<uint64_t>(trial_id));
      std::vector<double> u(space_.dimension());
      for (double& c : u) c = rng.uniform01();
      return space_.from_unit(u);
    }
    case Strategy::kMogo: {
      DesignPoint x = mogo_pending_batch_.front();
      mogo_pending_batch_.erase(mogo_pending_batch_.begin());
      return x;
    }
    case Strategy::kMobo:
      if (trial_id < init_count_)
        return space_.from_unit(halton_.point(static_cast<uint64_t>(trial_id)));
      return propose_mobo_locked(trial_id);
  }
  throw Error("unreachable strategy");
}

DesignPoint Optimizer::propose_mobo_locked(int64_t trial_id) {
  const uint64_t tid = static_cast<uint64_t>(trial_id);
  // The surrogate needs at least two valid points; until then stay on the
  // space-filling sequence (possible when early trials are invalid/failed).
  if (train_inputs_.size() < 2) {
    emit("warning", Json{{"type", "mobo_fallback_init"}, {"trial_id", trial_id}});
    return space_.from_unit(halton_.point(tid));
  }

  Rng weight_rng = Rng::substream(config_.rng_seed, kWeightTag, tid);
  const std::vector<double> weights = simplex_weight(weight_rng, objective_count_);

  if (!norm_valid_)
    emit("warning", Json{{"type", "scalarize_raw_objectives"}, {"trial_id", trial_id}});

  std::vector<double> scalarized(train_objectives_.size());
  for (size_t i = 0; i < train_objectives_.size(); ++i) {
    const ObjectiveVector f = norm_valid_
                                  ? normalize_objectives(train_objectives_[i], norm_lo_, norm_hi_)
                                  : train_objectives_[i];
    scalarized[i] = chebyshev_scalarize(f, weights, config_.scalarization_rho);
  }
  const Standardizer standardizer = Standardizer::fit(scalarized);
  std::vector<double> standardized(scalarized.size());
  for (size_t i = 0; i < scalarized.size(); ++i) standardized[i] = standardizer.forward(scalarized[i]);

  const Eigen::MatrixXd inputs = to_matrix(train_inputs_);
  const Eigen::VectorXd targets = to_vector(standardized);
  const GpHyperparams hyper =
      fit_gp(inputs, targets, config_.acquisition_restarts,
             Rng::substream(config_.rng_seed, kScalarizedFitTag, tid).next_u64());
  const GaussianProcess gp(inputs, targets, hyper);

  const double best = *std::min_element(standardized.begin(), standardized.end());
  const AcquisitionResult result =
      maximize_acquisition(gp, best, space_.dimension(),
                           Rng::substream(config_.rng_seed, kProbeTag, tid));
  return space_.from_unit(result.point);
}

void Optimizer::prepare_mogo_batch_locked(int64_t first_trial_id, int count) {
  if (count != config_.batch_size)
    throw Error("mogo proposes full generations of " + std::to_string(config_.batch_size));
  if (!mogo_pending_batch_.empty()) throw Error("mogo generation still pending evaluation");
  const uint64_t generation =
      static_cast<uint64_t>(first_trial_id) / static_cast<uint64_t>(config_.batch_size);
  mogo_pending_batch_.clear();
  if (mogo_parents_.size() < 2) {
    for (int k = 0; k < count; ++k)
      mogo_pending_batch_.push_back(
          space_.from_unit(halton_.point(static_cast<uint64_t>(first_trial_id + k))));
  } else {
    Rng rng = Rng::substream(config_.rng_seed, kMogoVarTag, generation);
    mogo_pending_batch_ = nsga2::mogo_step(mogo_parents_, space_, rng);
  }
  mogo_generation_told_ = 0;
  mogo_generation_valid_.clear();
}

void Optimizer::tell(int64_t trial_id, const TellOutcome& outcome) {
  std::unique_lock lock(mu_);
  if (trial_id < 0 || trial_id >= static_cast<int64_t>(trials_.size()))
    throw Error("tell: unknown trial_id " + std::to_string(trial_id));
  TrialRecord& record = trials_[static_cast<size_t>(trial_id)];
  if (record.finalized()) {
    if (outcomes_equal(record, outcome)) return;  // idempotent duplicate
    throw Error("tell: trial " + std::to_string(trial_id) +
                " already finalized with a different outcome");
  }
  if (outcome.status == TrialStatus::kValid) {
    if (!outcome.objectives) throw Error("tell: valid outcome requires objectives");
    if (outcome.objectives->size() != objective_count_)
      throw Error("tell: objective vector has wrong length");
    for (double v : *outcome.objectives)
      if (!std::isfinite(v)) throw Error("tell: non-finite objective value");
  } else if (outcome.objectives) {
    throw Error("tell: objectives forbidden for non-valid outcomes");
  }
  finalize_tell_locked(record, outcome);
}

void Optimizer::finalize_tell_locked(TrialRecord& record, const TellOutcome& outcome) {
  record.status = outcome.status;
  record.objectives = outcome.objectives;
  record.timing.finalized_at = now_wall();
  ++finalized_;

  if (outcome.status == TrialStatus::kValid) {
    archive_.insert(*outcome.objectives);
    train_inputs_.push_back(space_.to_unit(record.design));
    train_objectives_.push_back(*outcome.objectives);
    if (config_.strategy == Strategy::kMogo)
      mogo_generation_valid_.push_back({record.design, *outcome.objectives});
  }

  if (config_.strategy == Strategy::kMogo) {
    ++mogo_generation_told_;
    if (mogo_generation_told_ == config_.batch_size) {
      std::vector<nsga2::Individual> merged = mogo_parents_;
      merged.insert(merged.end(), mogo_generation_valid_.begin(), mogo_generation_valid_.end());
      if (!merged.empty())
        mogo_parents_ = nsga2::environmental_selection(
            merged, static_cast<size_t>(config_.batch_size));
      mogo_generation_valid_.clear();
      mogo_generation_told_ = 0;
    }
  }

  maybe_refit_locked();
}

void Optimizer::maybe_refit_locked() {
  const int64_t tells = finalized_;
  const bool due = tells <= 50 || tells % 5 == 0;
  if (!due) return;

  // Normalization basis for the Chebyshev scalarization refreshes only at
  // refit events.
  if (!train_objectives_.empty()) {
    norm_lo_ = archive_.seen_min();
    norm_hi_ = archive_.seen_max();
    norm_valid_ = true;
  }

  if (config_.strategy != Strategy::kMobo) return;
  if (train_inputs_.size() < 2) return;

  const Eigen::MatrixXd inputs = to_matrix(train_inputs_);
  Json refit_payload;
  refit_payload["tell_count"] = tells;
  refit_payload["training_count"] = train_inputs_.size();
  Json objective_summaries = Json::array();
  for (size_t j = 0; j < objective_count_; ++j) {
    std::vector<double> targets(train_objectives_.size());
    for (size_t i = 0; i < targets.size(); ++i) targets[i] = train_objectives_[i][j];
    const Standardizer standardizer = Standardizer::fit(targets);
    Eigen::VectorXd y(static_cast<Eigen::Index>(targets.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y(i) = standardizer.forward(targets[static_cast<size_t>(i)]);
    const GpHyperparams hyper =
        fit_gp(inputs, y, config_.acquisition_restarts,
               Rng::substream(config_.rng_seed, kObjectiveFitTag, static_cast<uint64_t>(tells),
                              static_cast<uint64_t>(j))
                   .next_u64());
    objective_hyper_[j] = hyper;
    double ls_min = hyper.length_scales[0];
    double ls_max = hyper.length_scales[0];
    for (double ls : hyper.length_scales) {
      ls_min = std::min(ls_min, ls);
      ls_max = std::max(ls_max, ls);
    }
    objective_summaries.push_back(Json{{"signal_variance", hyper.signal_variance},
                                       {"noise_variance", hyper.noise_variance},
                                       {"mean", hyper.mean},
                                       {"length_scale_min", ls_min},
                                       {"length_scale_max", ls_max}});
  }
  refit_payload["objectives"] = objective_summaries;
  emit("model_refit", refit_payload);
}

void Optimizer::restore_proposal(int64_t trial_id, const DesignPoint& design) {
  std::unique_lock lock(mu_);
  if (trial_id != static_cast<int64_t>(trials_.size()))
    throw Error("restore_proposal: trial ids must arrive in order");
  if (!space_.contains(design)) throw Error("restore_proposal: design outside bounds");
  TrialRecord record;
  record.trial_id = trial_id;
  record.design = design;
  record.status = TrialStatus::kPending;
  // MOGO generational bookkeeping follows from tells, so restored proposals
  // need no extra state here.
  trials_.push_back(std::move(record));
}

std::vector<ObjectiveVector> Optimizer::archive_points() const {
  std::shared_lock lock(mu_);
  return archive_.points();
}

TrialRecord Optimizer::trial(int64_t trial_id) const {
  std::shared_lock lock(mu_);
  if (trial_id < 0 || trial_id >= static_cast<int64_t>(trials_.size()))
    throw Error("trial: unknown trial_id " + std::to_string(trial_id));
  return trials_[static_cast<size_t>(trial_id)];
}

int64_t Optimizer::proposed_count() const {
  std::shared_lock lock(mu_);
  return static_cast<int64_t>(trials_.size());
}

int64_t Optimizer::finalized_count() const {
  std::shared_lock lock(mu_);
  return finalized_;
}

SurrogateSnapshot Optimizer::surrogate() const {
  std::shared_lock lock(mu_);
  SurrogateSnapshot snap;
  snap.per_objective = objective_hyper_;
  snap.training_count = static_cast<int64_t>(train_inputs_.size());
  snap.archive_size = static_cast<int64_t>(archive_.size());
  snap.norm_lo = norm_lo_;
  snap.norm_hi = norm_hi_;
  snap.norm_valid = norm_valid_;
  return snap;
}

void Optimizer::emit(const std::string& kind, const Json& payload) {
  if (event_hook_) event_hook_(kind, payload);
}

}  // namespace optifab
