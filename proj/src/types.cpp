#include "optifab/types.hpp"

namespace optifab {

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::kPending: return "pending";
    case TrialStatus::kRunning: return "running";
    case TrialStatus::kValid: return "valid";
    case TrialStatus::kInvalid: return "invalid";
    case TrialStatus::kFailed: return "failed";
  }
  return "unknown";
}

TrialStatus trial_status_from_string(const std::string& s) {
  if (s == "pending") return TrialStatus::kPending;
  if (s == "running") return TrialStatus::kRunning;
  if (s == "valid") return TrialStatus::kValid;
  if (s == "invalid") return TrialStatus::kInvalid;
  if (s == "failed") return TrialStatus::kFailed;
  throw Error("unknown trial status '" + s + "'");
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "mobo") return Strategy::kMobo;
  if (s == "mogo") return Strategy::kMogo;
  if (s == "random") return Strategy::kRandom;
  throw ConfigError("unknown strategy '" + s + "' (expected mobo, mogo, or random)");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kMobo: return "mobo";
    case Strategy::kMogo: return "mogo";
    case Strategy::kRandom: return "random";
  }
  return "unknown";
}

}  // namespace optifab
