#include "lpqb/sampler.hpp"

#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/linalg.hpp"

namespace lpqb {

Eigen::VectorXd draw_coefficients(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& pi,
                                  const Eigen::VectorXd& theta_star, RngStream& rng) {
  const auto k = upsilon.rows();
  const Eigen::MatrixXd precision = pi.size() == 0 ? upsilon : Eigen::MatrixXd(upsilon + pi);
  const auto llt = chol_with_jitter(precision);
  const Eigen::VectorXd mean = llt.solve(upsilon * theta_star);
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z[i] = rng.normal();
  // x = L^{-T} z has covariance (L L')^{-1} = P^{-1}.
  const Eigen::VectorXd fluct = llt.matrixU().solve(z);
  return mean + fluct;
}

double update_tau_sq(const Eigen::VectorXd& theta_path, const Eigen::MatrixXd& q, double nu,
                     RngStream& rng) {
  if (!(nu > 0.0)) throw NumericError("update_tau_sq: nu must be positive");
  const auto n = theta_path.size();
  double quad = 0.0;
  if (n > 0) {
    if (q.rows() != n || q.cols() != n)
      throw DataError("update_tau_sq: Q dimension does not match the path length");
    quad = theta_path.dot(q * theta_path);
  }
  const double shape = 0.5 * static_cast<double>(n + 1);
  const double rate = 1.0 / nu + 0.5 * quad;
  return rng.inverse_gamma(shape, rate);
}

double update_nu(double tau_sq, double kappa, RngStream& rng) {
  if (!(tau_sq > 0.0)) throw NumericError("update_nu: tau_sq must be positive");
  if (!(kappa > 0.0)) throw NumericError("update_nu: kappa must be positive");
  return rng.inverse_gamma(1.0, 1.0 / (kappa * kappa) + 1.0 / tau_sq);
}

Chain run_gibbs(const MomentModel& model, const McmcConfig& config) {
  if (config.n_burn < 0 || config.n_draws <= config.n_burn)
    throw ConfigError("run_gibbs: need n_draws > n_burn >= 0");
  if (config.thinning < 1) throw ConfigError("run_gibbs: thinning must be >= 1");

  const LpDesign& design = model.design();
  const int j = design.n_cols();
  const int horizon = design.horizon;
  const auto k = static_cast<Eigen::Index>(design.stacked_dim());
  const bool roughness = config.prior == PriorMode::Roughness;

  Eigen::MatrixXd q;
  if (roughness) q = smoothing_precision(horizon, config.prior_config.rho);

  const long kept = (config.n_draws - config.n_burn + config.thinning - 1) / config.thinning;
  Chain chain;
  chain.seed = config.seed;
  chain.chain_id = config.chain_id;
  chain.n_draws = config.n_draws;
  chain.n_burn = config.n_burn;
  chain.thinning = config.thinning;
  chain.theta.resize(kept, k);
  if (roughness) chain.tau.resize(kept, j);

  if (!(config.tau_init > 0.0)) throw ConfigError("run_gibbs: tau_init must be positive");
  RngStream rng(config.seed, config.chain_id);
  Eigen::VectorXd tau = Eigen::VectorXd::Constant(j, config.tau_init);
  Eigen::VectorXd nu = Eigen::VectorXd::Ones(j);
  Eigen::VectorXd theta = model.theta_star();
  Eigen::VectorXd path(horizon + 1);
  const Eigen::MatrixXd no_prior;  // empty: flat

  Eigen::VectorXd tau_sq(j);
  Eigen::Index row = 0;
  for (long iter = 0; iter < config.n_draws; ++iter) {
    if (roughness) {
      // sweep order: theta | tau, then every tau_j, then every nu_j
      const Eigen::MatrixXd pi = stacked_prior_precision(q, tau);
      theta = draw_coefficients(model.upsilon(), pi, model.theta_star(), rng);
      for (int m = 0; m < j; ++m) {
        for (int h = 0; h <= horizon; ++h) path[h] = theta[design.stacked_index(h, m)];
        tau_sq[m] = update_tau_sq(path, q, nu[m], rng);
        tau[m] = std::sqrt(tau_sq[m]);
      }
      for (int m = 0; m < j; ++m)
        nu[m] = update_nu(tau_sq[m], config.prior_config.kappa, rng);
    } else {
      theta = draw_coefficients(model.upsilon(), no_prior, model.theta_star(), rng);
    }
    if (iter >= config.n_burn && (iter - config.n_burn) % config.thinning == 0) {
      chain.theta.row(row) = theta;
      if (roughness) chain.tau.row(row) = tau;
      ++row;
    }
  }
  return chain;
}

Eigen::VectorXd posterior_mean(const Chain& chain) {
  if (chain.theta.rows() == 0) throw DataError("posterior_mean: empty chain");
  return chain.theta.colwise().mean();
}

}  // namespace lpqb
