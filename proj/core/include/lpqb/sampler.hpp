#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "lpqb/gmm.hpp"
#include "lpqb/prior.hpp"
#include "lpqb/rng.hpp"

namespace lpqb {

enum class PriorMode { Flat, Roughness };

struct McmcConfig {
  long n_draws = 25000;  // total Gibbs iterations
  long n_burn = 5000;    // discarded
  long thinning = 1;
  std::uint64_t seed = 1;
  std::uint64_t chain_id = 0;
  PriorMode prior = PriorMode::Roughness;
  PriorConfig prior_config{};
  double tau_init = 1.0;  // starting path scales (theta starts at theta*)
};

struct Chain {
  Eigen::MatrixXd theta;  // retained draws x K
  Eigen::MatrixXd tau;    // retained draws x J (empty under a flat prior)
  std::uint64_t seed = 0;
  std::uint64_t chain_id = 0;
  long n_draws = 0;
  long n_burn = 0;
  long thinning = 1;
  Eigen::Index n_retained() const { return theta.rows(); }
};

/// One draw from N(Omega Upsilon theta*, Omega) with Omega = (Upsilon +
/// Pi)^{-1}, without forming Omega: factor P = Upsilon + Pi, solve
/// P mu = Upsilon theta* for the mean, and solve the transposed Cholesky
/// factor against a standard-normal vector for the fluctuation.
Eigen::VectorXd draw_coefficients(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& pi,
                                  const Eigen::VectorXd& theta_star, RngStream& rng);

/// tau_j^2 | theta_j, nu_j ~ IG((n+1)/2, 1/nu_j + theta_j' Q theta_j / 2)
/// where n is the path length (n = H+1 gives the usual (H+2)/2 shape; an
/// empty path reduces to the pure mixture conditional IG(1/2, 1/nu_j)).
double update_tau_sq(const Eigen::VectorXd& theta_path, const Eigen::MatrixXd& q, double nu,
                     RngStream& rng);

/// nu_j | tau_j^2 ~ IG(1, 1/kappa^2 + 1/tau_j^2).
double update_nu(double tau_sq, double kappa, RngStream& rng);

/// Gibbs sweep per iteration: theta | tau, then tau_j^2 | theta_j, nu_j for
/// each path, then nu_j | tau_j^2. Flat mode fixes Pi = 0 and skips the
/// scale updates. Initialization: theta = theta*, tau_j = nu_j = 1.
Chain run_gibbs(const MomentModel& model, const McmcConfig& config);

/// Elementwise average of the retained draws.
Eigen::VectorXd posterior_mean(const Chain& chain);

}  // namespace lpqb
