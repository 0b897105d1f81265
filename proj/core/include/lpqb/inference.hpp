#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpqb/lp_design.hpp"

namespace lpqb {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// theta_k +/- z_{(1+level)/2} sqrt(V_kk) at the given coordinates. A
/// negative diagonal entry signals a broken covariance and throws.
std::vector<Interval> pointwise_intervals(const Eigen::VectorXd& theta_hat,
                                          const Eigen::MatrixXd& v, double level,
                                          const std::vector<int>& coords);

struct SupTBand {
  std::vector<Interval> band;
  double critical_value = 0.0;
  int n_dropped = 0;  // zero-variance coordinates excluded from the max
};

/// Simultaneous band via the max-t construction: the critical value c is
/// the level-quantile of max_h |xi_h| over n_sim draws xi ~ N(0, Corr(V)),
/// and the band is estimate_h +/- c * sqrt(V_hh). Draws are generated in
/// fixed-size blocks with per-block substreams of `seed`, so the result is
/// independent of the worker count.
SupTBand sup_t_band(const Eigen::VectorXd& estimates, const Eigen::MatrixXd& cov, double level,
                    long n_sim, std::uint64_t seed, int workers = 1);

struct IrfRow {
  std::string treatment;
  int horizon = 0;  // y_offset label; negative for lead designs
  double estimate = 0.0;
  double se = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;      // pointwise
  double band_lo = 0.0, band_hi = 0.0;  // simultaneous
};

struct IrfResult {
  std::vector<IrfRow> rows;  // grouped by treatment, horizons in order
  double level = 0.9;
  double pointwise_z = 0.0;
  std::map<std::string, double> critical_values;  // per treatment
  std::vector<std::string> warnings;
};

/// Assembles per-treatment IRF sequences with pointwise intervals and one
/// sup-t band per treatment over its horizon block of V.
IrfResult extract_irf(const Eigen::VectorXd& theta_hat, const Eigen::MatrixXd& v,
                      const LpDesign& design, double level, long n_sim, std::uint64_t seed,
                      int workers = 1);

}  // namespace lpqb
