#include "lpqb/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lpqb/csv.hpp"
#include "lpqb/diagnostics.hpp"
#include "lpqb/errors.hpp"
#include "lpqb/inference.hpp"
#include "lpqb/instruments.hpp"

namespace lpqb {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& inputs) {
  const std::string path = out_path(cfg, "run_manifest.txt");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("manifest: cannot open '" + path + "' for writing");
  out << "# lpqb run manifest; re-run with: lpqb " << cfg.command << " --config "
      << "run_manifest.txt\n";
  for (const auto& input : inputs)
    out << "# input " << input << " fnv1a=" << file_digest(input) << "\n";
  for (const auto& [k, v] : cfg.to_key_values()) out << k << " = " << v << "\n";
  if (!out) throw DataError("manifest: write failed for '" + path + "'");
}

void require_output(const std::string& path) {
  if (!fs::exists(path) || fs::file_size(path) == 0)
    throw DataError("output validation failed for '" + path + "'");
}

void write_irf_csv(const std::string& path, const IrfResult& irf) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : irf.rows)
    rows.push_back({r.treatment, std::to_string(r.horizon), format_double(r.estimate),
                    format_double(r.se), format_double(r.ci_lo), format_double(r.ci_hi),
                    format_double(r.band_lo), format_double(r.band_hi),
                    format_double(irf.level)});
  write_csv(path,
            {"treatment", "horizon", "estimate", "se", "ci_lo", "ci_hi", "band_lo", "band_hi",
             "level"},
            rows);
}

struct EstimateArtifacts {
  LpDesign design;
  Eigen::VectorXd theta_hat;
  Eigen::MatrixXd v_hat;
  Chain chain;
  IrfResult irf;
};

EstimateArtifacts run_estimate_pipeline(const Dataset& data, const RunConfig& cfg) {
  EstimateArtifacts a{build_design(data, cfg.spec), {}, {}, {}, {}};
  const MomentModel model(a.design, cfg.cov);
  McmcConfig mcmc;
  mcmc.n_draws = cfg.draws;
  mcmc.n_burn = cfg.burn;
  mcmc.thinning = cfg.thin;
  mcmc.seed = cfg.seed;
  mcmc.prior = cfg.prior_mode;
  mcmc.prior_config = cfg.prior;
  a.chain = run_gibbs(model, mcmc);
  a.theta_hat = posterior_mean(a.chain);
  a.v_hat = model.inference_covariance(a.theta_hat);
  a.irf = extract_irf(a.theta_hat, a.v_hat, a.design, cfg.level, cfg.n_sim,
                      mix_key(cfg.seed, 0x697266ULL), cfg.workers);
  return a;
}

}  // namespace

void cmd_estimate(const RunConfig& cfg) {
  if (cfg.data.empty()) throw ConfigError("estimate: 'data' path is required");
  const Dataset data = load_csv(cfg.data, cfg.schema);
  const EstimateArtifacts a = run_estimate_pipeline(data, cfg);

  for (const auto& w : a.irf.warnings) std::cerr << "warning: " << w << "\n";

  const std::string irf_path = out_path(cfg, "irf.csv");
  write_irf_csv(irf_path, a.irf);

  const std::string theta_path = out_path(cfg, "theta.csv");
  {
    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k < a.design.stacked_dim(); ++k) {
      const auto [h, col] = a.design.coord(k);
      rows.push_back({std::to_string(a.design.y_offsets[static_cast<std::size_t>(h)]),
                      std::to_string(col), a.design.column_names[static_cast<std::size_t>(col)],
                      format_double(a.theta_hat[k]),
                      format_double(std::sqrt(std::max(a.v_hat(k, k), 0.0)))});
    }
    write_csv(theta_path, {"horizon", "coord", "name", "estimate", "se"}, rows);
  }

  if (cfg.dump_chain) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index it = 0; it < a.chain.theta.rows(); ++it)
      for (Eigen::Index k = 0; k < a.chain.theta.cols(); ++k)
        rows.push_back({std::to_string(it), std::to_string(k),
                        format_double(a.chain.theta(it, k))});
    write_csv(out_path(cfg, "chain_theta.csv"), {"iteration", "coordinate", "value"}, rows);
    if (a.chain.tau.size() > 0) {
      rows.clear();
      for (Eigen::Index it = 0; it < a.chain.tau.rows(); ++it)
        for (Eigen::Index p = 0; p < a.chain.tau.cols(); ++p)
          rows.push_back({std::to_string(it), std::to_string(p),
                          format_double(a.chain.tau(it, p))});
      write_csv(out_path(cfg, "chain_tau.csv"), {"iteration", "path", "value"}, rows);
    }
  }

  write_manifest(cfg, {cfg.data});
  require_output(irf_path);
  require_output(theta_path);
}

void cmd_simulate(const RunConfig& cfg) {
  const McReport report = run_monte_carlo(cfg.to_grid());

  const std::string pw_path = out_path(cfg, "mc_pointwise.csv");
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.pointwise)
      rows.push_back({r.estimator, std::to_string(r.t_count), std::to_string(r.horizon),
                      format_double(r.bias), format_double(r.rmse), format_double(r.length),
                      format_double(r.coverage)});
    write_csv(pw_path, {"estimator", "T", "h", "bias", "rmse", "length", "coverage"}, rows);
  }
  const std::string sim_path = out_path(cfg, "mc_simultaneous.csv");
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.simultaneous)
      rows.push_back({r.estimator, std::to_string(r.t_count), format_double(r.coverage),
                      std::to_string(r.n_used), std::to_string(r.n_failed)});
    write_csv(sim_path, {"estimator", "T", "coverage", "n_used", "n_failed"}, rows);
  }
  write_manifest(cfg, {});
  require_output(pw_path);
  require_output(sim_path);
}

void cmd_instruments(const RunConfig& cfg) {
  if (cfg.weather.empty() || cfg.capacity.empty())
    throw ConfigError("instruments: 'weather' and 'capacity' paths are required");
  const auto rows = build_zone_potentials(cfg.weather, cfg.capacity);
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows)
    out.push_back(
        {format_date(r.date), r.zone, format_double(r.wind), format_double(r.solar)});
  const std::string path = out_path(cfg, "potentials.csv");
  write_csv(path, {"date", "zone", "wind_potential", "solar_potential"}, out);
  write_manifest(cfg, {cfg.weather, cfg.capacity});
  require_output(path);
}

void cmd_diagnose(const RunConfig& cfg) {
  if (cfg.data.empty()) throw ConfigError("diagnose: 'data' path is required");
  const Dataset data = load_csv(cfg.data, cfg.schema);

  const FirstStageReport fs_report = first_stage(data, cfg.spec);
  const std::string fs_path = out_path(cfg, "first_stage.csv");
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : fs_report.rows)
      for (std::size_t i = 0; i < fs_report.instrument_names.size(); ++i)
        rows.push_back({r.treatment, fs_report.instrument_names[i],
                        format_double(r.instrument_coefs[i]), format_double(r.partial_r2),
                        format_double(r.wald_stat), format_double(r.wald_p),
                        format_double(fs_report.min_singular_value)});
    write_csv(fs_path,
              {"treatment", "instrument", "coefficient", "partial_r2", "wald_stat", "wald_p",
               "min_singular_value"},
              rows);
  }

  const auto placebo = placebo_predetermined(data, cfg.placebo_lags, cfg.spec);
  const std::string pl_path = out_path(cfg, "placebo.csv");
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : placebo)
      for (std::size_t i = 0; i < data.instrument_names.size(); ++i)
        rows.push_back({r.variable, std::to_string(r.lag), data.instrument_names[i],
                        format_double(r.instrument_coefs[i]), format_double(r.partial_r2),
                        format_double(r.wald_stat), format_double(r.wald_p)});
    write_csv(pl_path,
              {"variable", "lag", "instrument", "coefficient", "partial_r2", "wald_stat",
               "wald_p"},
              rows);
  }

  EstimationSettings settings;
  settings.cov = cfg.cov;
  settings.prior_mode = cfg.prior_mode;
  settings.prior = cfg.prior;
  settings.mcmc_draws = cfg.draws;
  settings.mcmc_burn = cfg.burn;
  settings.level = cfg.level;
  settings.n_sim = cfg.n_sim;
  settings.seed = cfg.seed;
  settings.workers = cfg.workers;
  const IrfResult leads = lead_placebo(data, cfg.spec, settings, cfg.leads);
  for (const auto& w : leads.warnings) std::cerr << "warning: " << w << "\n";
  const std::string lead_path = out_path(cfg, "lead_placebo.csv");
  write_irf_csv(lead_path, leads);

  write_manifest(cfg, {cfg.data});
  require_output(fs_path);
  require_output(pl_path);
  require_output(lead_path);
}

void cmd_make_synthetic(const RunConfig& cfg) {
  SyntheticConfig sc;
  sc.n_days = cfg.n_days;
  sc.seed = cfg.seed;
  const std::string data_path = out_path(cfg, "synthetic.csv");
  write_synthetic_dataset(data_path, sc);
  write_synthetic_holidays(out_path(cfg, "holidays.csv"), sc);

  // Ready-to-run estimate config pointing at the generated data.
  const std::string cfg_path = out_path(cfg, "estimate.cfg");
  {
    std::ofstream out(cfg_path, std::ios::binary);
    if (!out) throw DataError("make-synthetic: cannot write '" + cfg_path + "'");
    const DataSchema s = synthetic_schema();
    out << "data = " << data_path << "\n"
        << "date_col = " << s.date << "\n"
        << "outcome = " << s.outcome << "\n"
        << "treatments = wind_gen,solar_gen\n"
        << "instruments = wind_pot,solar_pot\n"
        << "controls = load,temp\n"
        << "indicators = holiday\n"
        << "spec = ld\nhorizon = 7\nlags = 7\nfourier = 4\n"
        << "prior = rp\nrho = 4\nkappa = 1\n"
        << "seed = 1\n";
  }
  write_manifest(cfg, {});
  require_output(data_path);
  require_output(cfg_path);
}

void run_command(const RunConfig& cfg) {
  if (cfg.command == "estimate") return cmd_estimate(cfg);
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  if (cfg.command == "instruments") return cmd_instruments(cfg);
  if (cfg.command == "diagnose") return cmd_diagnose(cfg);
  if (cfg.command == "make-synthetic") return cmd_make_synthetic(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace lpqb
