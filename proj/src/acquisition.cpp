#include "optifab/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace optifab {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }
double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
}  // namespace

double chebyshev_scalarize(const ObjectiveVector& objectives, const std::vector<double>& weights,
                           double rho) {
  if (objectives.size() != weights.size())
    throw Error("chebyshev_scalarize: weight/objective size mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (size_t j = 0; j < objectives.size(); ++j) {
    const double w = weights[j] * objectives[j];
    worst = std::max(worst, w);
    total += w;
  }
  return worst + rho * total;
}

ObjectiveVector normalize_objectives(const ObjectiveVector& f, const std::vector<double>& lo,
                                     const std::vector<double>& hi) {
  ObjectiveVector out(f.size());
  for (size_t j = 0; j < f.size(); ++j) {
    const double range = hi[j] - lo[j];
    out[j] = range > 0.0 ? (f[j] - lo[j]) / range : 0.0;
  }
  return out;
}

std::vector<double> simplex_weight(Rng& rng, size_t m) {
  std::vector<double> w(m);
  double total = 0.0;
  for (size_t j = 0; j < m; ++j) {
    double u = rng.uniform01();
    while (u <= 0.0) u = rng.uniform01();
    w[j] = -std::log(u);
    total += w[j];
  }
  for (double& v : w) v /= total;
  return w;
}

double expected_improvement(double mean, double stddev, double best) {
  const double delta = best - mean;
  if (stddev < 1e-12) return std::max(delta, 0.0);
  const double z = delta / stddev;
  return delta * normal_cdf(z) + stddev * normal_pdf(z);
}

namespace {

double ei_at(const GaussianProcess& gp, const std::vector<double>& x, double best) {
  const GpPrediction p = gp.predict(x);
  return expected_improvement(p.mean, std::sqrt(p.variance), best);
}

}  // namespace

AcquisitionResult maximize_acquisition(const GaussianProcess& gp, double best_value, size_t dim,
                                       Rng probe_rng, const AcquisitionBudget& budget) {
  std::vector<std::vector<double>> probes(static_cast<size_t>(budget.probes));
  for (auto& p : probes) {
    p.resize(dim);
    for (double& c : p) c = probe_rng.uniform01();
  }

  std::vector<double> values(probes.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(probes.size()); ++i)
    values[static_cast<size_t>(i)] = ei_at(gp, probes[static_cast<size_t>(i)], best_value);

  std::vector<size_t> order(probes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });

  const size_t top = std::min<size_t>(static_cast<size_t>(budget.refine_top), order.size());
  std::vector<AcquisitionResult> refined(top);
#pragma omp parallel for schedule(dynamic)
  for (int64_t c = 0; c < static_cast<int64_t>(top); ++c) {
    std::vector<double> x = probes[order[static_cast<size_t>(c)]];
    double best = values[order[static_cast<size_t>(c)]];
    double step = 0.25;
    for (int sweep = 0; sweep < budget.refine_sweeps && step > 1e-3; ++sweep) {
      bool improved = false;
      for (size_t d = 0; d < dim; ++d) {
        for (double direction : {+1.0, -1.0}) {
          std::vector<double> probe = x;
          probe[d] = std::clamp(probe[d] + direction * step, 0.0, 1.0);
          const double value = ei_at(gp, probe, best_value);
          if (value > best) {
            best = value;
            x = std::move(probe);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    refined[static_cast<size_t>(c)] = {std::move(x), best};
  }

  size_t winner = 0;
  for (size_t c = 1; c < refined.size(); ++c)
    if (refined[c].value > refined[winner].value) winner = c;
  return refined[winner];
}

}  // namespace optifab
