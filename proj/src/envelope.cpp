#include "optifab/envelope.hpp"

#include <cctype>
#include <charconv>

namespace optifab {

void validate_experiment_id(const std::string& experiment_id) {
  if (experiment_id.empty()) throw Error("experiment_id must not be empty");
  for (char c : experiment_id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      throw Error("experiment_id may only contain [A-Za-z0-9_-]: '" + experiment_id + "'");
  }
}

std::string make_task_id(const std::string& experiment_id, int64_t trial_id, int attempt) {
  validate_experiment_id(experiment_id);
  if (trial_id < 0 || attempt < 1) throw Error("make_task_id: negative trial or attempt < 1");
  return experiment_id + ":" + std::to_string(trial_id) + ":" + std::to_string(attempt);
}

TaskId parse_task_id(const std::string& task_id) {
  const size_t second = task_id.rfind(':');
  if (second == std::string::npos || second == 0) throw Error("malformed task_id: " + task_id);
  const size_t first = task_id.rfind(':', second - 1);
  if (first == std::string::npos || first == 0) throw Error("malformed task_id: " + task_id);

  TaskId out;
  out.experiment_id = task_id.substr(0, first);
  validate_experiment_id(out.experiment_id);

  const std::string trial_str = task_id.substr(first + 1, second - first - 1);
  const std::string attempt_str = task_id.substr(second + 1);
  auto parse_int = [&](const std::string& s, auto& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw Error("malformed task_id: " + task_id);
  };
  parse_int(trial_str, out.trial_id);
  parse_int(attempt_str, out.attempt);
  if (out.trial_id < 0 || out.attempt < 1) throw Error("malformed task_id: " + task_id);
  return out;
}

Json TaskEnvelope::to_json() const {
  Json j;
  j["schema_version"] = kEnvelopeSchemaVersion;
  j["task_id"] = task_id;
  j["experiment_id"] = experiment_id;
  j["function"] = Json{{"registry_key", function.registry_key}, {"version", function.version}};
  j["params"] = params;
  j["attempt"] = attempt;
  j["max_attempts"] = max_attempts;
  j["submitted_at"] = submitted_at;
  return j;
}

TaskEnvelope TaskEnvelope::from_json(const Json& j) {
  const std::string context = "task envelope";
  const std::string schema = require_as<std::string>(j, "schema_version", context);
  if (schema != kEnvelopeSchemaVersion)
    throw Error("unsupported envelope schema_version '" + schema + "'");
  TaskEnvelope env;
  env.task_id = require_as<std::string>(j, "task_id", context);
  env.experiment_id = require_as<std::string>(j, "experiment_id", context);
  const Json& fn = require_field(j, "function", context);
  env.function.registry_key = require_as<std::string>(fn, "registry_key", context);
  env.function.version = require_as<std::string>(fn, "version", context);
  env.params = require_field(j, "params", context);
  env.attempt = require_as<int>(j, "attempt", context);
  env.max_attempts = require_as<int>(j, "max_attempts", context);
  env.submitted_at = require_as<double>(j, "submitted_at", context);
  if (env.attempt < 1 || env.attempt > env.max_attempts)
    throw Error("task envelope: attempt out of range");
  return env;
}

Json ResultEnvelope::to_json() const {
  Json j;
  j["schema_version"] = kEnvelopeSchemaVersion;
  j["task_id"] = task_id;
  j["status"] = to_string(status);
  if (objectives) j["objectives"] = *objectives;
  if (error_text) j["error_text"] = *error_text;
  j["timing"] = Json{{"started_at", started_at}, {"finished_at", finished_at}};
  j["worker_id"] = worker_id;
  return j;
}

ResultEnvelope ResultEnvelope::from_json(const Json& j) {
  const std::string context = "result envelope";
  const std::string schema = require_as<std::string>(j, "schema_version", context);
  if (schema != kEnvelopeSchemaVersion)
    throw Error("unsupported envelope schema_version '" + schema + "'");
  ResultEnvelope env;
  env.task_id = require_as<std::string>(j, "task_id", context);
  env.status = trial_status_from_string(require_as<std::string>(j, "status", context));
  if (j.contains("objectives")) env.objectives = j.at("objectives").get<ObjectiveVector>();
  if (j.contains("error_text")) env.error_text = j.at("error_text").get<std::string>();
  const Json& timing = require_field(j, "timing", context);
  env.started_at = require_as<double>(timing, "started_at", context);
  env.finished_at = require_as<double>(timing, "finished_at", context);
  env.worker_id = require_as<std::string>(j, "worker_id", context);
  if ((env.status == TrialStatus::kValid) != env.objectives.has_value())
    throw Error("result envelope: objectives present iff status is valid");
  if (env.finished_at < env.started_at)
    throw Error("result envelope: finished_at precedes started_at");
  return env;
}

}  // namespace optifab
