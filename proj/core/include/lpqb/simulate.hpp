#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpqb/dataset.hpp"
#include "lpqb/gmm.hpp"
#include "lpqb/inference.hpp"
#include "lpqb/prior.hpp"
#include "lpqb/rng.hpp"
#include "lpqb/sampler.hpp"

namespace lpqb {

/// Endogenous-treatment DGP with a closed-form impulse response:
///   z_t ~ N(0,1),  u_t ~ N(0, sigma_u^2)  (confounder),
///   r_t = pi_z z_t + kappa_u u_t + v_t,
///   y_t = phi y_{t-1} + beta r_t + u_t + e_t,
/// burn-in discarded. The effect of a unit r_t shock on y_{t+h} is
/// gamma_h = beta phi^h.
struct DgpParams {
  double beta = 1.0;
  double phi = 0.7;      // |phi| < 1
  double pi_z = 1.0;     // first-stage instrument strength
  double kappa_u = 0.5;  // endogeneity loading
  double sigma_u = 1.0;
  double sigma_v = 1.0;
  double sigma_e = 1.0;
  Eigen::Index n_obs = 500;  // raw series length delivered (after burn-in)
  int burn_in = 200;
};

/// (beta, beta phi, ..., beta phi^H).
Eigen::VectorXd true_irf(const DgpParams& params, int horizon);

/// Simulates the DGP and wraps it as a Dataset (outcome "y", treatment "r",
/// instrument "z"); nothing is standardized so the estimand stays beta phi^h
/// per raw treatment unit.
Dataset generate_dgp(const DgpParams& params, RngStream& rng);

/// One fitted replication: per-horizon IRF estimates with both interval
/// types for the first treatment.
struct McEstimate {
  Eigen::VectorXd irf;
  std::vector<Interval> pointwise;
  std::vector<Interval> band;
};

struct EstimatorContext {
  SpecConfig spec;
  CovMode cov = CovMode::Plain;
  double level = 0.90;
  long n_sim_band = 100000;
  McmcConfig mcmc;
  std::uint64_t band_seed = 0;
};

using EstimatorFn = std::function<McEstimate(const Dataset&, const EstimatorContext&)>;

struct McEstimator {
  std::string name;
  EstimatorFn fn;
};

/// Built-in estimators by name: "gmm" (two-step GMM with sandwich bands),
/// "qb_flat" (quasi-posterior mean under a flat prior), "qb_rp"
/// (roughness-penalty prior). Throws ConfigError for unknown names.
std::vector<McEstimator> standard_estimators(const std::vector<std::string>& names);

struct McGrid {
  std::vector<Eigen::Index> sample_sizes{200, 500, 1000};  // usable T after trimming
  std::vector<std::string> estimators{"gmm", "qb_flat", "qb_rp"};
  int replications = 200;
  DgpParams dgp;
  int horizon = 7;
  int lags = 2;
  CovMode cov = CovMode::Plain;
  double level = 0.90;
  long n_sim_band = 100000;
  long mcmc_draws = 25000;
  long mcmc_burn = 5000;
  PriorConfig prior{};
  std::uint64_t seed = 1;
  int workers = 1;
};

struct McPointwiseRow {
  std::string estimator;
  Eigen::Index t_count = 0;
  int horizon = 0;
  double bias = 0.0;
  double rmse = 0.0;
  double length = 0.0;    // mean pointwise interval length
  double coverage = 0.0;  // pointwise
};

struct McSimultaneousRow {
  std::string estimator;
  Eigen::Index t_count = 0;
  double coverage = 0.0;  // whole true IRF inside the band
  int n_used = 0;
  int n_failed = 0;
};

struct McReport {
  std::vector<McPointwiseRow> pointwise;
  std::vector<McSimultaneousRow> simultaneous;
  int replications = 0;
  std::uint64_t seed = 0;
};

/// Replications run under per-index RNG streams derived from (seed, T,
/// replication), so the report is identical for any worker count.
/// Estimation failures are counted per cell and excluded, never silent.
McReport run_monte_carlo(const McGrid& grid);
McReport run_monte_carlo(const McGrid& grid, const std::vector<McEstimator>& estimators);

}  // namespace lpqb
