#pragma once

#include <Eigen/Dense>

namespace lpqb {

/// Roughness-penalty prior hyperparameters.
struct PriorConfig {
  double rho = 4.0;    // correlation range, in horizons
  double kappa = 1.0;  // half-Cauchy scale of the path scales tau_j
};

/// First-order difference matrix, H x (H+1): row i has -1 at column i and
/// +1 at column i+1. Annihilates constant paths.
Eigen::MatrixXd difference_matrix(int horizon);

/// Smoothing precision Q = D'D + (8/rho^2) I over horizons 0..H. The ridge
/// term penalizes the constant component D leaves free, making Q positive
/// definite (smallest eigenvalue >= 8/rho^2). Tridiagonal. Accepts H = 0,
/// where Q degenerates to the pure ridge.
Eigen::MatrixXd smoothing_precision(int horizon, double rho);

/// Matern-type approximation of the prior correlation between coefficients
/// separated by `distance` horizons: exp(-sqrt(8) * distance / rho). Valid
/// away from the grid boundary.
double prior_correlation(int distance, double rho);

/// Stacked prior precision Pi = Q kron diag(tau^{-2}); the (h, h') block of
/// size J x J is Q(h, h') * diag(tau^{-2}), consistent with horizon-major
/// stacking so path j carries precision tau_j^{-2} Q.
Eigen::MatrixXd stacked_prior_precision(const Eigen::MatrixXd& q, const Eigen::VectorXd& tau);

struct PrecisionModel {
  int horizon = 0;
  double rho = 4.0;
  Eigen::MatrixXd d;  // difference matrix (empty when horizon == 0)
  Eigen::MatrixXd q;  // smoothing precision
};

PrecisionModel make_precision_model(int horizon, double rho);

}  // namespace lpqb
