#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optifab/cancel.hpp"
#include "optifab/types.hpp"

namespace optifab {

struct ProblemSpec {
  std::string name;
  int n = 0;  // design dimension
  int m = 0;  // objective count
  std::string constraint_mode = "none";  // none | overlap_check
  double eval_delay = 0.0;               // simulated wall seconds per evaluation

  void validate() const;
  Json to_json() const;
  static ProblemSpec from_json(const Json& j, const std::string& context);
};

struct EvaluationOutcome {
  std::optional<ObjectiveVector> objectives;
  TrialStatus status = TrialStatus::kValid;  // valid | invalid
  double eval_duration = 0.0;
};

class Problem {
 public:
  explicit Problem(ProblemSpec spec) : spec_(std::move(spec)) {}
  virtual ~Problem() = default;

  const ProblemSpec& spec() const { return spec_; }
  virtual DesignSpace design_space() const = 0;

  // Applies eval_delay (passive, cancellable wait), then evaluates.
  EvaluationOutcome evaluate(const DesignPoint& x, CancelToken* cancel = nullptr) const;

  // Componentwise lower bound of reachable objective values; anchors the
  // Monte-Carlo hypervolume box for journal tracking.
  virtual ObjectiveVector objective_floor() const = 0;

 protected:
  virtual EvaluationOutcome evaluate_impl(const DesignPoint& x) const = 0;

  ProblemSpec spec_;
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec);

// DTLZ2 objective evaluation; x in [0,1]^n, n >= m >= 2.
ObjectiveVector dtlz2_eval(const DesignPoint& x, int m);

// Points on the g=0 surface (positive orthant of the unit m-sphere). For
// m=2 the sample is a deterministic equal-angle grid including both
// endpoints; for m>=3 it is seeded uniform sphere sampling.
std::vector<ObjectiveVector> true_front_sample(const ProblemSpec& problem, size_t count,
                                               uint64_t seed);

// Synthetic detector-like constrained problem: n=7, m=3, smooth multimodal
// objectives with conflicting optima and an ellipsoidal exclusion region
// covering ~10% of the design box. All constants live in problems.cpp; the
// frozen anchor values live in tests/golden/detector_toy_golden.json.
EvaluationOutcome detector_toy_eval(const DesignPoint& x);
DesignSpace detector_toy_space();

// Registry version shared by submitter and workers.
inline constexpr const char* kProblemFunctionVersion = "1";

}  // namespace optifab
