#pragma once

#include <Eigen/Dense>

#include "lpqb/lp_design.hpp"

namespace lpqb {

/// Moment-covariance estimators for the stacked IV scores.
enum class CovMode { Plain, BlockDiag, Har };

/// Bartlett truncation rule B = ceil(1.3 * sqrt(T)).
int har_bandwidth(Eigen::Index t_count);

/// Bartlett kernel weights (1 - b/B) for b = 0..B-1.
std::vector<double> bartlett_weights(int bandwidth);

/// Closed-form just-identified estimator: column-wise vectorization of
/// (Z'X)^{-1} Z'Y, so coordinates follow the horizon-major stacked map.
/// Throws NumericError if Z'X is singular or has condition number > 1e12.
Eigen::VectorXd initial_iv_estimate(const LpDesign& design);

/// T x K matrix of per-observation stacked moments: row t, block h equals
/// (Y(t,h) - theta_h' x_t) * z_t.
Eigen::MatrixXd moment_matrix(const LpDesign& design, const Eigen::VectorXd& theta);

/// Uncentered second-moment covariance of the stacked scores at theta.
/// Plain: (1/T) sum_t m_t m_t'. BlockDiag: Plain with cross-horizon blocks
/// zeroed. Har: Gamma_0 + sum_{b<B} (1 - b/B)(Gamma_b + Gamma_b') with
/// Gamma_b = (1/T) sum_{t>b} m_t m_{t-b}'; B follows har_bandwidth(T)
/// unless har_b overrides it (har_b >= 1).
Eigen::MatrixXd moment_covariance(const LpDesign& design, const Eigen::VectorXd& theta,
                                  CovMode mode, int har_b = 0);

/// W = Sigma^{-1} (Plain/Har, jitter ladder on failure); for BlockDiag the
/// within-horizon blocks are inverted separately and the cross-horizon
/// blocks are exactly zero. block_dim is the per-horizon score dimension J.
Eigen::MatrixXd weighting_matrix(const Eigen::MatrixXd& sigma, CovMode mode, int block_dim);

struct TwoStepGmm {
  Eigen::VectorXd theta;
  Eigen::MatrixXd w2;
};

/// Identity-weighted first stage (equals 2SLS), second stage re-weighted by
/// the inverse moment covariance at the first-stage estimate. Exactly
/// identified designs return theta* at both stages.
TwoStepGmm two_step_gmm(const LpDesign& design, CovMode mode = CovMode::Plain);

/// (1/T) (G'WG)^{-1} G'W Sigma W G (G'WG)^{-1}, symmetrized.
Eigen::MatrixXd sandwich_covariance(const Eigen::MatrixXd& g_hat, const Eigen::MatrixXd& w,
                                    const Eigen::MatrixXd& sigma, Eigen::Index t_count);

/// Stacked moment machinery evaluated once per design: theta*, the
/// Kronecker-block Jacobian G_hat = I_{H+1} x (-Z'X/T), the moment
/// covariance at theta*, the weighting matrix (held fixed thereafter), and
/// the quasi-likelihood curvature Upsilon = T G'WG.
class MomentModel {
 public:
  MomentModel(const LpDesign& design, CovMode mode);

  const LpDesign& design() const { return design_; }
  CovMode cov_mode() const { return mode_; }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  const Eigen::MatrixXd& g_hat() const { return g_hat_; }
  const Eigen::MatrixXd& sigma_hat() const { return sigma_hat_; }
  const Eigen::MatrixXd& weighting() const { return w_; }
  const Eigen::MatrixXd& upsilon() const { return upsilon_; }

  /// Sandwich covariance for inference at theta_hat. The weighting matrix
  /// stays the one fixed at theta*; the covariance is re-evaluated at
  /// theta_hat from the complete stacked moment vector (BlockDiag applies
  /// to the weighting only).
  Eigen::MatrixXd inference_covariance(const Eigen::VectorXd& theta_hat) const;

 private:
  const LpDesign& design_;
  CovMode mode_;
  Eigen::VectorXd theta_star_;
  Eigen::MatrixXd g_hat_;
  Eigen::MatrixXd sigma_hat_;
  Eigen::MatrixXd w_;
  Eigen::MatrixXd upsilon_;
};

}  // namespace lpqb
