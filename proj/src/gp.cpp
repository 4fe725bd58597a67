#include "optifab/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optifab/json_util.hpp"
#include "optifab/rng.hpp"

namespace optifab {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& inputs, const GpHyperparams& hyper) {
  const Eigen::Index t = inputs.rows();
  const Eigen::Index dim = inputs.cols();
  Eigen::MatrixXd k(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    k(i, i) = hyper.signal_variance + hyper.noise_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      double dist2 = 0.0;
      for (Eigen::Index d = 0; d < dim; ++d) {
        const double delta = (inputs(i, d) - inputs(j, d)) / hyper.length_scales[d];
        dist2 += delta * delta;
      }
      const double v = hyper.signal_variance * std::exp(-0.5 * dist2);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::VectorXd kernel_cross(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& x,
                             const GpHyperparams& hyper) {
  const Eigen::Index t = inputs.rows();
  const Eigen::Index dim = inputs.cols();
  Eigen::VectorXd k(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    double dist2 = 0.0;
    for (Eigen::Index d = 0; d < dim; ++d) {
      const double delta = (inputs(i, d) - x(d)) / hyper.length_scales[d];
      dist2 += delta * delta;
    }
    k(i) = hyper.signal_variance * std::exp(-0.5 * dist2);
  }
  return k;
}

}  // namespace

GaussianProcess::GaussianProcess(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                                 GpHyperparams hyper)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), hyper_(std::move(hyper)) {
  if (inputs_.rows() != targets_.size()) throw Error("gp: inputs/targets size mismatch");
  if (static_cast<Eigen::Index>(hyper_.length_scales.size()) != inputs_.cols())
    throw Error("gp: length-scale dimension mismatch");
  hyper_.noise_variance = std::max(hyper_.noise_variance, GpHyperparams::kNoiseFloor);

  const Eigen::MatrixXd k = kernel_matrix(inputs_, hyper_);
  llt_.compute(k);
  // A failed factorization means the noise floor was too optimistic for this
  // conditioning; bump and retry.
  while (llt_.info() != Eigen::Success && hyper_.noise_variance < 1.0) {
    hyper_.noise_variance *= 10.0;
    Eigen::MatrixXd jittered = k;
    jittered.diagonal().array() += hyper_.noise_variance;
    llt_.compute(jittered);
  }
  if (llt_.info() != Eigen::Success) throw Error("gp: kernel factorization failed");
  const Eigen::VectorXd residual = targets_.array() - hyper_.mean;
  alpha_ = llt_.solve(residual);
}

GpPrediction GaussianProcess::predict(const Eigen::VectorXd& x) const {
  GpPrediction out;
  if (inputs_.rows() == 0) {
    out.mean = hyper_.mean;
    out.variance = hyper_.signal_variance;
    return out;
  }
  const Eigen::VectorXd k_star = kernel_cross(inputs_, x, hyper_);
  out.mean = hyper_.mean + k_star.dot(alpha_);
  const Eigen::VectorXd v = llt_.solve(k_star);
  out.variance = std::max(0.0, hyper_.signal_variance - k_star.dot(v));
  return out;
}

GpPrediction GaussianProcess::predict(const std::vector<double>& x) const {
  return predict(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
}

double gp_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                  const GpHyperparams& hyper) {
  const Eigen::Index t = inputs.rows();
  Eigen::MatrixXd k = kernel_matrix(inputs, hyper);
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const Eigen::VectorXd r = targets.array() - hyper.mean;
  const Eigen::VectorXd alpha = llt.solve(r);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < t; ++i) log_det += std::log(llt.matrixL()(i, i));
  return -0.5 * r.dot(alpha) - log_det - 0.5 * static_cast<double>(t) * kLog2Pi;
}

namespace {

// Hyperparameters packed as [mean, log sv, log noise, log ls_0..log ls_{d-1}].
std::vector<double> pack(const GpHyperparams& h) {
  std::vector<double> theta;
  theta.reserve(3 + h.length_scales.size());
  theta.push_back(h.mean);
  theta.push_back(std::log(h.signal_variance));
  theta.push_back(std::log(h.noise_variance));
  for (double ls : h.length_scales) theta.push_back(std::log(ls));
  return theta;
}

GpHyperparams unpack(const std::vector<double>& theta, size_t dim) {
  GpHyperparams h;
  h.mean = theta[0];
  h.signal_variance = std::exp(theta[1]);
  h.noise_variance = std::max(std::exp(theta[2]), GpHyperparams::kNoiseFloor);
  h.length_scales.resize(dim);
  for (size_t d = 0; d < dim; ++d) h.length_scales[d] = std::exp(theta[3 + d]);
  return h;
}

struct FitCandidate {
  GpHyperparams hyper;
  double ll = -std::numeric_limits<double>::infinity();
};

void clamp_theta(std::vector<double>& theta) {
  theta[0] = std::clamp(theta[0], -5.0, 5.0);             // mean
  theta[1] = std::clamp(theta[1], -9.0, 9.0);             // log signal variance
  theta[2] = std::clamp(theta[2], std::log(GpHyperparams::kNoiseFloor), 2.0);
  for (size_t i = 3; i < theta.size(); ++i) theta[i] = std::clamp(theta[i], -5.0, 6.5);
}

FitCandidate local_search(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                          std::vector<double> theta) {
  const size_t dim = static_cast<size_t>(inputs.cols());
  auto objective = [&](const std::vector<double>& t) {
    return gp_log_marginal_likelihood(inputs, targets, unpack(t, dim));
  };
  clamp_theta(theta);
  double best = objective(theta);
  double step = 0.6;
  const double min_step = 0.03;
  const int max_sweeps = 14;

  auto try_move = [&](std::vector<double> probe) {
    clamp_theta(probe);
    const double value = objective(probe);
    if (value > best) {
      best = value;
      theta = std::move(probe);
      return true;
    }
    return false;
  };

  for (int sweep = 0; sweep < max_sweeps && step >= min_step; ++sweep) {
    bool improved = false;
    for (size_t i = 0; i < theta.size(); ++i) {
      for (double direction : {+1.0, -1.0}) {
        std::vector<double> probe = theta;
        probe[i] += direction * step;
        if (try_move(std::move(probe))) {
          improved = true;
          break;
        }
      }
    }
    // The likelihood of near-linear trends rides a (length-scale, signal
    // variance) ridge where no single-coordinate move improves; probe the
    // ridge directions too.
    for (size_t d = 0; d < dim + 1; ++d) {
      for (double direction : {+1.0, -1.0}) {
        std::vector<double> probe = theta;
        probe[1] += 2.0 * direction * step;
        if (d < dim) probe[3 + d] += direction * step;
        else
          for (size_t i = 3; i < probe.size(); ++i) probe[i] += direction * step;
        if (try_move(std::move(probe))) {
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {unpack(theta, dim), best};
}

}  // namespace

GpHyperparams fit_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, int restarts,
                     uint64_t seed) {
  if (inputs.rows() < 2) throw Error("fit_gp requires >= 2 training points");
  if (restarts < 1) throw Error("fit_gp requires restarts >= 1");
  const size_t dim = static_cast<size_t>(inputs.cols());

  std::vector<std::vector<double>> starts(static_cast<size_t>(restarts));
  {
    GpHyperparams canonical;
    canonical.mean = 0.0;
    canonical.signal_variance = 1.0;
    canonical.noise_variance = 1e-4;
    canonical.length_scales.assign(dim, 0.5);
    starts[0] = pack(canonical);
  }
  for (int r = 1; r < restarts; ++r) {
    Rng rng = Rng::substream(seed, "gp-fit-start", static_cast<uint64_t>(r));
    GpHyperparams h;
    h.mean = rng.uniform(-0.5, 0.5);
    h.signal_variance = std::exp(rng.uniform(std::log(0.25), std::log(4.0)));
    h.noise_variance = std::exp(rng.uniform(std::log(1e-6), std::log(1e-2)));
    h.length_scales.resize(dim);
    for (size_t d = 0; d < dim; ++d)
      h.length_scales[d] = std::exp(rng.uniform(std::log(0.05), std::log(2.0)));
    starts[static_cast<size_t>(r)] = pack(h);
  }

  std::vector<FitCandidate> results(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t r = 0; r < static_cast<int64_t>(starts.size()); ++r)
    results[static_cast<size_t>(r)] = local_search(inputs, targets, starts[static_cast<size_t>(r)]);

  // Lowest index wins ties, so the result does not depend on thread order.
  size_t best = 0;
  for (size_t r = 1; r < results.size(); ++r)
    if (results[r].ll > results[best].ll) best = r;
  return results[best].hyper;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Standardizer Standardizer::fit(const std::vector<double>& values) {
  Standardizer s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(values.size()));
  if (s.sd <= 0.0) s.sd = 1.0;
  return s;
}

}  // namespace optifab
