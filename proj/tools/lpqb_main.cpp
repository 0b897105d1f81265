// lpqb: quasi-Bayesian local-projection IV toolkit.
//
// Subcommands: estimate | simulate | instruments | diagnose | make-synthetic.
// Settings come from an optional flat key=value config file plus command-line
// flags; flags win. Every run writes a manifest that re-parses as a config,
// so `lpqb <cmd> --config out/run_manifest.txt` repeats the run exactly.

#include <CLI11.hpp>
#include <deque>
#include <iostream>
#include <string>
#include <vector>

#include "lpqb/commands.hpp"
#include "lpqb/errors.hpp"

namespace {

struct FlagValues {
  std::vector<std::pair<std::string, std::string*>> bound;
  std::deque<std::string> storage;  // deque: stable addresses across growth
};

// Binds --flag-name to the config key so flag overrides merge uniformly.
void add_option(CLI::App* cmd, FlagValues& flags, const std::string& flag,
                const std::string& key, const std::string& help) {
  flags.storage.emplace_back();
  auto* value = &flags.storage.back();
  flags.bound.emplace_back(key, value);
  cmd->add_option(flag, *value, help);
}

lpqb::KeyValues collect(const std::string& config_path, const FlagValues& flags) {
  lpqb::KeyValues kv;
  if (!config_path.empty()) kv = lpqb::KeyValues::from_file(config_path);
  for (const auto& [key, value] : flags.bound)
    if (!value->empty()) kv.set(key, *value);
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Bayesian local-projection IV estimation toolkit"};
  app.require_subcommand(1);

  struct SubState {
    CLI::App* cmd = nullptr;
    std::string config_path;
    FlagValues flags;
  };
  std::vector<std::unique_ptr<SubState>> subs;

  auto make_sub = [&](const std::string& name, const std::string& help, bool hidden = false) {
    auto state = std::make_unique<SubState>();
    state->cmd = app.add_subcommand(name, help);
    if (hidden) state->cmd->group("");
    state->cmd->add_option("--config", state->config_path, "flat key=value config file");
    auto& f = state->flags;
    add_option(state->cmd, f, "--seed", "seed", "RNG seed");
    add_option(state->cmd, f, "--out-dir", "out_dir", "output directory");
    add_option(state->cmd, f, "--workers", "workers", "parallel worker count");
    add_option(state->cmd, f, "--level", "level", "confidence level");
    add_option(state->cmd, f, "--prior", "prior", "prior: rp|flat");
    add_option(state->cmd, f, "--cov", "cov", "moment covariance: plain|block|har");
    add_option(state->cmd, f, "--spec", "spec", "specification: ld|level");
    subs.push_back(std::move(state));
    return subs.back().get();
  };

  auto* est = make_sub("estimate", "Estimate regularized impulse responses from a dataset CSV");
  {
    auto& f = est->flags;
    add_option(est->cmd, f, "--data", "data", "dataset CSV path");
    add_option(est->cmd, f, "--date-col", "date_col", "date column name");
    add_option(est->cmd, f, "--outcome", "outcome", "outcome column");
    add_option(est->cmd, f, "--treatments", "treatments", "treatment columns (comma-separated)");
    add_option(est->cmd, f, "--instruments", "instruments", "instrument columns");
    add_option(est->cmd, f, "--controls", "controls", "continuous controls ('none' for none)");
    add_option(est->cmd, f, "--indicators", "indicators", "0/1 indicator columns ('none')");
    add_option(est->cmd, f, "--horizon", "horizon", "max horizon H");
    add_option(est->cmd, f, "--lags", "lags", "outcome lag count L");
    add_option(est->cmd, f, "--fourier", "fourier", "Fourier pairs N");
    add_option(est->cmd, f, "--dow", "dow", "day-of-week indicators: true|false");
    add_option(est->cmd, f, "--rho", "rho", "prior correlation range");
    add_option(est->cmd, f, "--kappa", "kappa", "half-Cauchy scale");
    add_option(est->cmd, f, "--draws", "draws", "total MCMC iterations");
    add_option(est->cmd, f, "--burn", "burn", "burn-in iterations");
    add_option(est->cmd, f, "--thin", "thin", "thinning interval");
    add_option(est->cmd, f, "--n-sim", "n_sim", "sup-t simulation draws");
    add_option(est->cmd, f, "--dump-chain", "dump_chain", "dump chain CSVs: true|false");
  }

  auto* sim = make_sub("simulate", "Monte Carlo study of the estimators on the built-in DGP");
  {
    auto& f = sim->flags;
    add_option(sim->cmd, f, "--t-list", "t_list", "sample sizes, comma-separated");
    add_option(sim->cmd, f, "--estimators", "estimators", "gmm,qb_flat,qb_rp subset");
    add_option(sim->cmd, f, "--reps", "replications", "Monte Carlo replications");
    add_option(sim->cmd, f, "--horizon", "horizon", "max horizon H");
    add_option(sim->cmd, f, "--mc-lags", "mc_lags", "lag count in the MC design");
    add_option(sim->cmd, f, "--mc-draws", "mc_draws", "MCMC iterations per replication");
    add_option(sim->cmd, f, "--mc-burn", "mc_burn", "MCMC burn-in per replication");
    add_option(sim->cmd, f, "--n-sim", "n_sim", "sup-t simulation draws");
    add_option(sim->cmd, f, "--rho", "rho", "prior correlation range");
    add_option(sim->cmd, f, "--kappa", "kappa", "half-Cauchy scale");
  }

  auto* ins = make_sub("instruments", "Build zone-level renewable potentials from weather CSVs");
  {
    auto& f = ins->flags;
    add_option(ins->cmd, f, "--weather", "weather", "hourly weather CSV (cell_id,timestamp,u100,v100,ssr)");
    add_option(ins->cmd, f, "--capacity", "capacity", "capacity CSV (cell_id,zone,wind_mw,solar_mw)");
  }

  auto* dia = make_sub("diagnose", "First-stage, placebo and lead-placebo diagnostics");
  {
    auto& f = dia->flags;
    add_option(dia->cmd, f, "--data", "data", "dataset CSV path");
    add_option(dia->cmd, f, "--date-col", "date_col", "date column name");
    add_option(dia->cmd, f, "--outcome", "outcome", "outcome column");
    add_option(dia->cmd, f, "--treatments", "treatments", "treatment columns");
    add_option(dia->cmd, f, "--instruments", "instruments", "instrument columns");
    add_option(dia->cmd, f, "--controls", "controls", "continuous controls ('none')");
    add_option(dia->cmd, f, "--indicators", "indicators", "0/1 indicator columns ('none')");
    add_option(dia->cmd, f, "--horizon", "horizon", "max horizon H");
    add_option(dia->cmd, f, "--lags", "lags", "outcome lag count L");
    add_option(dia->cmd, f, "--fourier", "fourier", "Fourier pairs N");
    add_option(dia->cmd, f, "--placebo-lags", "placebo_lags", "lags for placebo regressions");
    add_option(dia->cmd, f, "--leads", "leads", "lead count for the lead placebo");
    add_option(dia->cmd, f, "--draws", "draws", "MCMC iterations for the lead placebo");
    add_option(dia->cmd, f, "--burn", "burn", "MCMC burn-in");
  }

  auto* mk = make_sub("make-synthetic", "Generate the bundled demo dataset", /*hidden=*/true);
  {
    auto& f = mk->flags;
    add_option(mk->cmd, f, "--n-days", "n_days", "number of days to generate");
  }

  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<SubState*, std::string>> dispatch = {
      {est, "estimate"},
      {sim, "simulate"},
      {ins, "instruments"},
      {dia, "diagnose"},
      {mk, "make-synthetic"},
  };
  try {
    for (const auto& [state, name] : dispatch) {
      if (!state->cmd->parsed()) continue;
      const lpqb::KeyValues kv = collect(state->config_path, state->flags);
      lpqb::run_command(lpqb::RunConfig::from_key_values(name, kv));
      return 0;
    }
  } catch (const lpqb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
