#include "optifab/problems.hpp"

#include <cmath>

#include "optifab/clock.hpp"
#include "optifab/pareto.hpp"
#include "optifab/rng.hpp"

namespace optifab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void ProblemSpec::validate() const {
  if (name == "dtlz2") {
    if (m < 2) throw ConfigError("problem.m must be >= 2 for dtlz2");
    if (n < m) throw ConfigError("problem.n must be >= problem.m for dtlz2");
  } else if (name == "detector-toy") {
    if (n != 0 && n != 7) throw ConfigError("problem.n is fixed at 7 for detector-toy");
    if (m != 0 && m != 3) throw ConfigError("problem.m is fixed at 3 for detector-toy");
  } else {
    throw ConfigError("unknown problem name '" + name + "'");
  }
  if (eval_delay < 0) throw ConfigError("problem.eval_delay must be >= 0");
}

Json ProblemSpec::to_json() const {
  Json j;
  j["name"] = name;
  j["n"] = n;
  j["m"] = m;
  j["constraint_mode"] = constraint_mode;
  j["eval_delay"] = eval_delay;
  return j;
}

ProblemSpec ProblemSpec::from_json(const Json& j, const std::string& context) {
  ProblemSpec spec;
  spec.name = require_as<std::string>(j, "name", context);
  spec.n = field_or<int>(j, "n", 0);
  spec.m = field_or<int>(j, "m", 0);
  spec.constraint_mode = field_or<std::string>(j, "constraint_mode", "none");
  spec.eval_delay = field_or<double>(j, "eval_delay", 0.0);
  if (spec.name == "detector-toy") {
    spec.n = 7;
    spec.m = 3;
    spec.constraint_mode = "overlap_check";
  }
  spec.validate();
  return spec;
}

EvaluationOutcome Problem::evaluate(const DesignPoint& x, CancelToken* cancel) const {
  const double t0 = now_wall();
  if (spec_.eval_delay > 0) {
    if (cancel != nullptr) {
      if (!cancel->sleep_for(spec_.eval_delay)) throw Error("evaluation cancelled");
    } else {
      sleep_seconds(spec_.eval_delay);
    }
  }
  EvaluationOutcome outcome = evaluate_impl(x);
  outcome.eval_duration = now_wall() - t0;
  return outcome;
}

ObjectiveVector dtlz2_eval(const DesignPoint& x, int m) {
  const int n = static_cast<int>(x.size());
  if (m < 2 || n < m) throw Error("dtlz2_eval requires n >= m >= 2");
  for (double v : x)
    if (v < 0.0 || v > 1.0) throw Error("dtlz2_eval: coordinate outside [0,1]");

  double g = 0.0;
  for (int i = m - 1; i < n; ++i) g += (x[i] - 0.5) * (x[i] - 0.5);

  ObjectiveVector f(m);
  const double scale = 1.0 + g;
  // f_1 .. f_m, 1-indexed per the usual DTLZ formulation.
  for (int k = 1; k <= m; ++k) {
    double value = scale;
    for (int j = 1; j <= m - k; ++j) value *= std::cos(x[j - 1] * kPi / 2.0);
    if (k > 1) value *= std::sin(x[m - k] * kPi / 2.0);
    f[k - 1] = value;
  }
  return f;
}

namespace {

class Dtlz2Problem final : public Problem {
 public:
  explicit Dtlz2Problem(ProblemSpec spec) : Problem(std::move(spec)) {}

  DesignSpace design_space() const override {
    DesignSpace space;
    space.bounds.assign(spec_.n, Interval{0.0, 1.0});
    return space;
  }

  ObjectiveVector objective_floor() const override {
    return ObjectiveVector(spec_.m, 0.0);
  }

 protected:
  EvaluationOutcome evaluate_impl(const DesignPoint& x) const override {
    EvaluationOutcome out;
    out.objectives = dtlz2_eval(x, spec_.m);
    out.status = TrialStatus::kValid;
    return out;
  }
};

// ---------------------------------------------------------------------------
// detector-toy problem definition. Every constant below is part of the
// versioned problem definition; changing any of them invalidates the golden
// file and the calibrated invalid rate.
// ---------------------------------------------------------------------------

constexpr int kToyDim = 7;
constexpr int kToyObjectives = 3;

// Bounds in problem units: aerogel thickness [cm], refractive-index delta,
// mirror radius [cm], mirror tilt [deg], sensor x/z offsets [cm], pixel
// pitch [mm].
const Interval kToyBounds[kToyDim] = {
    {1.0, 6.0}, {0.01, 0.06}, {150.0, 300.0}, {-10.0, 10.0},
    {-20.0, 20.0}, {-15.0, 15.0}, {1.0, 5.0},
};

// Ellipsoidal exclusion (overlap check stand-in) in normalized coordinates:
// invalid iff sum_i ((u_i - 0.5) / w_i)^2 <= r^2. Radius calibrated by
// Monte-Carlo to an exclusion volume of 0.100 of the unit box.
const double kToyExclusionWeights[kToyDim] = {1.00, 0.90, 1.10, 1.00, 0.80, 1.20, 1.00};
constexpr double kToyExclusionRadius = 0.5835;

// Objective anchors and curvatures (normalized coordinates). The anchors
// conflict, so no single design minimizes all three objectives.
const double kToyAnchor[kToyObjectives][kToyDim] = {
    {0.25, 0.75, 0.20, 0.60, 0.30, 0.80, 0.50},
    {0.75, 0.25, 0.70, 0.30, 0.80, 0.20, 0.40},
    {0.50, 0.50, 0.90, 0.85, 0.15, 0.55, 0.90},
};
const double kToyCurvature[kToyObjectives][kToyDim] = {
    {1.0, 0.8, 1.2, 0.6, 1.0, 0.9, 0.7},
    {0.9, 1.1, 0.7, 1.0, 0.6, 1.2, 0.8},
    {0.8, 0.7, 1.0, 1.1, 0.9, 0.6, 1.2},
};
constexpr double kToyRippleAmplitude = 0.05;
constexpr double kToyRippleFrequency = 3.0;

bool toy_excluded(const std::vector<double>& u) {
  double q = 0.0;
  for (int i = 0; i < kToyDim; ++i) {
    const double d = (u[i] - 0.5) / kToyExclusionWeights[i];
    q += d * d;
  }
  return q <= kToyExclusionRadius * kToyExclusionRadius;
}

}  // namespace

DesignSpace detector_toy_space() {
  DesignSpace space;
  space.bounds.assign(kToyBounds, kToyBounds + kToyDim);
  return space;
}

EvaluationOutcome detector_toy_eval(const DesignPoint& x) {
  const DesignSpace space = detector_toy_space();
  if (!space.contains(x)) throw Error("detector_toy_eval: point outside bounds");
  const std::vector<double> u = space.to_unit(x);

  EvaluationOutcome out;
  if (toy_excluded(u)) {
    out.status = TrialStatus::kInvalid;
    return out;
  }
  ObjectiveVector f(kToyObjectives, 0.0);
  for (int k = 0; k < kToyObjectives; ++k) {
    double value = 0.0;
    for (int i = 0; i < kToyDim; ++i) {
      const double d = u[i] - kToyAnchor[k][i];
      const double ripple = std::sin(kToyRippleFrequency * kPi * d);
      value += kToyCurvature[k][i] * d * d + kToyRippleAmplitude * ripple * ripple;
    }
    f[k] = value;
  }
  out.objectives = std::move(f);
  out.status = TrialStatus::kValid;
  return out;
}

namespace {

class DetectorToyProblem final : public Problem {
 public:
  explicit DetectorToyProblem(ProblemSpec spec) : Problem(std::move(spec)) {}

  DesignSpace design_space() const override { return detector_toy_space(); }

  ObjectiveVector objective_floor() const override {
    return ObjectiveVector(kToyObjectives, 0.0);
  }

 protected:
  EvaluationOutcome evaluate_impl(const DesignPoint& x) const override {
    return detector_toy_eval(x);
  }
};

}  // namespace

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec) {
  spec.validate();
  if (spec.name == "dtlz2") return std::make_unique<Dtlz2Problem>(spec);
  if (spec.name == "detector-toy") {
    ProblemSpec fixed = spec;
    fixed.n = kToyDim;
    fixed.m = kToyObjectives;
    fixed.constraint_mode = "overlap_check";
    return std::make_unique<DetectorToyProblem>(fixed);
  }
  throw ConfigError("unknown problem name '" + spec.name + "'");
}

std::vector<ObjectiveVector> true_front_sample(const ProblemSpec& problem, size_t count,
                                               uint64_t seed) {
  if (problem.name != "dtlz2")
    throw Error("true_front_sample: only dtlz2 has a known front");
  const int m = problem.m;
  std::vector<ObjectiveVector> points;
  points.reserve(count);
  if (m == 2) {
    // Equal-angle grid on the quarter circle, endpoints included.
    for (size_t i = 0; i < count; ++i) {
      const double theta =
          count == 1 ? kPi / 4.0 : (kPi / 2.0) * static_cast<double>(i) / (count - 1);
      points.push_back({std::cos(theta), std::sin(theta)});
    }
    return points;
  }
  Rng rng = Rng::substream(seed, "true-front", static_cast<uint64_t>(m));
  while (points.size() < count) {
    ObjectiveVector f(m);
    double norm2 = 0.0;
    for (int d = 0; d < m; ++d) {
      f[d] = std::fabs(rng.normal());
      norm2 += f[d] * f[d];
    }
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : f) v *= inv;
    points.push_back(std::move(f));
  }
  return points;
}

}  // namespace optifab
