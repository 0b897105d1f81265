#pragma once

#include <string>

#include "lpqb/config.hpp"

namespace lpqb {

/// Pipeline end-to-end: load -> design -> moment model -> Gibbs chain ->
/// quasi-posterior mean -> sandwich covariance -> pointwise + sup-t bands.
/// Writes irf.csv, theta.csv, run_manifest.txt (and the optional chain dump)
/// under out_dir.
void cmd_estimate(const RunConfig& config);

/// Monte Carlo study; writes mc_pointwise.csv, mc_simultaneous.csv,
/// run_manifest.txt.
void cmd_simulate(const RunConfig& config);

/// Weather-to-potential pipeline; writes potentials.csv, run_manifest.txt.
void cmd_instruments(const RunConfig& config);

/// First-stage, placebo and lead-placebo reports; writes first_stage.csv,
/// placebo.csv, lead_placebo.csv, run_manifest.txt.
void cmd_diagnose(const RunConfig& config);

/// Bundled demo dataset; writes synthetic.csv, holidays.csv and a ready
/// config file estimate.cfg under out_dir.
void cmd_make_synthetic(const RunConfig& config);

/// Dispatch on config.command.
void run_command(const RunConfig& config);

}  // namespace lpqb
