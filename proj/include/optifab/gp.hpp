#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace optifab {

// Squared-exponential kernel with per-dimension length-scales. Inputs live
// in the unit hypercube; targets are standardized by the caller.
struct GpHyperparams {
  double mean = 0.0;
  double signal_variance = 1.0;
  std::vector<double> length_scales;
  double noise_variance = 1e-4;

  static constexpr double kNoiseFloor = 1e-6;
};

struct GpPrediction {
  double mean = 0.0;
  double variance = 0.0;
};

class GaussianProcess {
 public:
  // Empty process: predictions return the prior (0, signal_variance).
  GaussianProcess() = default;

  GaussianProcess(Eigen::MatrixXd inputs, Eigen::VectorXd targets, GpHyperparams hyper);

  GpPrediction predict(const Eigen::VectorXd& x) const;
  GpPrediction predict(const std::vector<double>& x) const;

  const GpHyperparams& hyperparams() const { return hyper_; }
  Eigen::Index training_count() const { return inputs_.rows(); }

 private:
  Eigen::MatrixXd inputs_;   // rows = points
  Eigen::VectorXd targets_;
  GpHyperparams hyper_{};
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;    // K^{-1} (y - mean)
};

// Log marginal likelihood of the standardized targets under the kernel.
double gp_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                  const GpHyperparams& hyper);

// Maximizes the log marginal likelihood by coordinate-wise compass search in
// log space from `restarts` starting points (first start is canonical, the
// rest are seeded draws). Deterministic given the seed. Requires >= 2 rows.
GpHyperparams fit_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, int restarts,
                     uint64_t seed);

// Convenience adapters for std::vector-based call sites.
Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows);
Eigen::VectorXd to_vector(const std::vector<double>& v);

// Mean/standard deviation used for target standardization; sd(=0) maps to 1.
struct Standardizer {
  double mean = 0.0;
  double sd = 1.0;

  static Standardizer fit(const std::vector<double>& values);
  double forward(double v) const { return (v - mean) / sd; }
  double inverse(double z) const { return z * sd + mean; }
};

}  // namespace optifab
