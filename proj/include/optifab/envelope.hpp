#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "optifab/types.hpp"

namespace optifab {

// Wire schema shared by runners, workers, and the result channel. Canonical
// JSON: sorted keys, no whitespace, explicit schema_version. See
// docs/protocol.md for the field-by-field description.
inline constexpr const char* kEnvelopeSchemaVersion = "1";

struct FunctionRef {
  std::string registry_key;
  std::string version;

  bool operator==(const FunctionRef&) const = default;
};

struct TaskId {
  std::string experiment_id;
  int64_t trial_id = 0;
  int attempt = 1;
};

// "<experiment_id>:<trial_id>:<attempt>"; experiment ids are restricted to
// [A-Za-z0-9_-] so the format parses unambiguously.
std::string make_task_id(const std::string& experiment_id, int64_t trial_id, int attempt);
TaskId parse_task_id(const std::string& task_id);
void validate_experiment_id(const std::string& experiment_id);

struct TaskEnvelope {
  std::string task_id;
  std::string experiment_id;
  FunctionRef function;
  Json params;  // {"design": [...], "problem": {...}, "trial_id": N}
  int attempt = 1;
  int max_attempts = 3;
  double submitted_at = 0.0;

  bool operator==(const TaskEnvelope&) const = default;

  Json to_json() const;
  static TaskEnvelope from_json(const Json& j);
};

struct ResultEnvelope {
  std::string task_id;
  TrialStatus status = TrialStatus::kValid;  // valid | invalid | failed
  std::optional<ObjectiveVector> objectives;
  std::optional<std::string> error_text;
  double started_at = 0.0;
  double finished_at = 0.0;
  std::string worker_id;

  bool operator==(const ResultEnvelope&) const = default;

  Json to_json() const;
  static ResultEnvelope from_json(const Json& j);
};

}  // namespace optifab
