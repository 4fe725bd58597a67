#include "optifab/fabric.hpp"

#include "optifab/clock.hpp"
#include "optifab/logging.hpp"

namespace optifab {

FunctionRegistry& FunctionRegistry::instance() {
  static FunctionRegistry registry;
  return registry;
}

void FunctionRegistry::register_function(const std::string& key, const std::string& version,
                                         TaskFunction fn) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it != entries_.end() && it->second.version != version)
    throw Error("function '" + key + "' already registered with version " + it->second.version +
                ", refusing conflicting version " + version);
  entries_[key] = Entry{version, std::move(fn)};
}

const FunctionRegistry::Entry* FunctionRegistry::resolve(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::map<std::string, std::string> FunctionRegistry::manifest() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::map<std::string, std::string> out;
  for (const auto& [key, entry] : entries_) out[key] = entry.version;
  return out;
}

namespace {

EvaluationOutcome evaluate_problem_params(const Json& params, CancelToken* cancel) {
  const ProblemSpec spec = ProblemSpec::from_json(require_field(params, "problem", "task params"),
                                                  "task params problem");
  const DesignPoint design = require_as<DesignPoint>(params, "design", "task params");
  const auto problem = make_problem(spec);
  return problem->evaluate(design, cancel);
}

}  // namespace

void register_builtin_functions() {
  auto& registry = FunctionRegistry::instance();
  registry.register_function("dtlz2", kProblemFunctionVersion, evaluate_problem_params);
  registry.register_function("detector-toy", kProblemFunctionVersion, evaluate_problem_params);
}

ResultEnvelope execute_task(const TaskEnvelope& envelope, const std::string& worker_id,
                            double timeout_seconds, CancelToken* external) {
  ResultEnvelope result;
  result.task_id = envelope.task_id;
  result.worker_id = worker_id;
  result.started_at = now_wall();

  auto fail = [&](const std::string& text) {
    result.status = TrialStatus::kFailed;
    result.objectives.reset();
    result.error_text = text;
    result.finished_at = now_wall();
    return result;
  };

  const FunctionRegistry::Entry* entry =
      FunctionRegistry::instance().resolve(envelope.function.registry_key);
  if (entry == nullptr)
    return fail("unknown function key '" + envelope.function.registry_key + "'");
  if (entry->version != envelope.function.version)
    return fail("function version mismatch for '" + envelope.function.registry_key +
                "': submitter " + envelope.function.version + ", worker " + entry->version);

  CancelToken local;
  CancelToken& cancel = external != nullptr ? *external : local;
  cancel.set_deadline(std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(timeout_seconds)));
  try {
    const EvaluationOutcome outcome = entry->fn(envelope.params, &cancel);
    result.finished_at = now_wall();
    if (result.finished_at - result.started_at > timeout_seconds)
      return fail("task exceeded timeout of " + std::to_string(timeout_seconds) + " s");
    result.status = outcome.status;
    result.objectives = outcome.objectives;
    if (outcome.status == TrialStatus::kInvalid) result.objectives.reset();
    return result;
  } catch (const std::exception& e) {
    if (cancel.cancel_requested()) return fail("task cancelled");
    if (cancel.cancelled())
      return fail("task exceeded timeout of " + std::to_string(timeout_seconds) + " s");
    return fail(e.what());
  }
}

RetryDecision retry_policy(const ResultEnvelope& result, const TaskEnvelope& envelope) {
  if (result.status == TrialStatus::kFailed && envelope.attempt < envelope.max_attempts)
    return RetryDecision::kResubmit;
  return RetryDecision::kFinalize;
}

bool DedupGate::admit(const ResultEnvelope& result, bool* conflict) {
  if (conflict != nullptr) *conflict = false;
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = seen_.try_emplace(result.task_id, result.status);
  if (inserted) return true;
  ++duplicates_;
  if (it->second != result.status) {
    ++conflicts_;
    if (conflict != nullptr) *conflict = true;
    LOG_WARN("dedup: conflicting duplicate for %s (first %s, now %s)", result.task_id.c_str(),
             to_string(it->second), to_string(result.status));
  }
  return false;
}

uint64_t DedupGate::duplicate_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return duplicates_;
}

uint64_t DedupGate::conflict_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return conflicts_;
}

}  // namespace optifab
