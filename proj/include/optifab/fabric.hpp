#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

#include "optifab/cancel.hpp"
#include "optifab/envelope.hpp"
#include "optifab/problems.hpp"

namespace optifab {

using TaskFunction = std::function<EvaluationOutcome(const Json& params, CancelToken* cancel)>;

// Pre-shared function registry: workers run the same distribution as the
// submitter and resolve (key, version) locally instead of downloading code.
class FunctionRegistry {
 public:
  static FunctionRegistry& instance();

  // Re-registering the same (key, version) replaces the entry; a different
  // version for an existing key is a conflict.
  void register_function(const std::string& key, const std::string& version, TaskFunction fn);

  struct Entry {
    std::string version;
    TaskFunction fn;
  };
  const Entry* resolve(const std::string& key) const;

  std::map<std::string, std::string> manifest() const;  // key -> version

 private:
  mutable std::mutex mu_;
  std::map<std::string, Entry> entries_;
};

// Registers the built-in problem evaluators ("dtlz2", "detector-toy").
// Idempotent; every process that executes tasks calls this at startup.
void register_builtin_functions();

// Worker-side execution: resolves the function, enforces the version match
// and the per-task timeout, and maps outcomes onto a ResultEnvelope. An
// external token lets the owner cancel a running task (shutdown, requeue).
ResultEnvelope execute_task(const TaskEnvelope& envelope, const std::string& worker_id,
                            double timeout_seconds = 300.0, CancelToken* external = nullptr);

enum class RetryDecision { kFinalize, kResubmit };

// failed with attempts left -> resubmit; invalid is a deterministic
// constraint violation and never retries.
RetryDecision retry_policy(const ResultEnvelope& result, const TaskEnvelope& envelope);

// Consumer-side effectively-once gate over the at-least-once channel.
class DedupGate {
 public:
  // True when this is the first result for the task_id. `conflict` is set
  // when a duplicate arrived with a different status than the first.
  bool admit(const ResultEnvelope& result, bool* conflict = nullptr);

  uint64_t duplicate_count() const;
  uint64_t conflict_count() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, TrialStatus> seen_;
  uint64_t duplicates_ = 0;
  uint64_t conflicts_ = 0;
};

}  // namespace optifab
