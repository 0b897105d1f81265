#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lpqb/inference.hpp"
#include "lpqb/lp_design.hpp"
#include "lpqb/prior.hpp"
#include "lpqb/sampler.hpp"

namespace lpqb {

struct FirstStageRow {
  std::string treatment;
  std::vector<double> instrument_coefs;  // excluded instruments, standardized scale
  double partial_r2 = 0.0;
  double wald_stat = 0.0;
  double wald_p = 1.0;
};

struct FirstStageReport {
  std::vector<std::string> instrument_names;
  std::vector<FirstStageRow> rows;  // one per treatment
  // Smallest singular value of the (treatment x instrument) matrix of
  // excluded-instrument coefficients; treatments and instruments are
  // standardized first so the statistic is scale-free.
  double min_singular_value = 0.0;
};

/// Regresses each treatment on all instruments plus the baseline controls
/// (the non-treatment design columns). Partial R^2 compares against the
/// regression without the excluded instruments; the Wald statistic tests
/// their joint nullity with a heteroskedasticity-robust (HC1) covariance.
FirstStageReport first_stage(const Dataset& data, const SpecConfig& config);

struct PlaceboRow {
  std::string variable;
  int lag = 0;
  std::vector<double> instrument_coefs;
  double partial_r2 = 0.0;
  double wald_stat = 0.0;
  double wald_p = 1.0;
};

/// Same machinery as first_stage with lagged predetermined variables
/// (outcome, treatments, continuous controls) as dependents, one row per
/// (variable, lag).
std::vector<PlaceboRow> placebo_predetermined(const Dataset& data, const std::vector<int>& lags,
                                              const SpecConfig& config);

struct EstimationSettings {
  CovMode cov = CovMode::Plain;
  PriorMode prior_mode = PriorMode::Roughness;
  PriorConfig prior{};
  long mcmc_draws = 25000;
  long mcmc_burn = 5000;
  double level = 0.90;
  long n_sim = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Full estimation pipeline on the level-specification lead design with
/// dependents y_{t-n_leads}, ..., y_{t-1}; the result rows are indexed by
/// (negative) lead.
IrfResult lead_placebo(const Dataset& data, const SpecConfig& config,
                       const EstimationSettings& settings, int n_leads = 8);

}  // namespace lpqb
