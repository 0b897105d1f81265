#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpqb/dataset.hpp"
#include "lpqb/gmm.hpp"
#include "lpqb/lp_design.hpp"
#include "lpqb/sampler.hpp"
#include "lpqb/simulate.hpp"
#include "lpqb/synthetic.hpp"

namespace lpqb {

/// Flat "key = value" text file; '#' starts a comment, blank lines are
/// skipped. Values may hold comma-separated lists.
struct KeyValues {
  std::map<std::string, std::string> map;

  static KeyValues from_file(const std::string& path);

  bool has(const std::string& key) const { return map.count(key) > 0; }
  void set(const std::string& key, const std::string& value) { map[key] = value; }
  /// Later entries win; used for flag overrides.
  void merge_from(const KeyValues& other);
};

/// Effective settings for one command run. from_key_values validates every
/// key and range; to_key_values emits the complete effective configuration,
/// which is what the run manifest records (a manifest re-parses as a
/// config, so any run can be repeated from its manifest alone).
struct RunConfig {
  std::string command;

  // file paths
  std::string data;
  std::string weather;
  std::string capacity;
  std::string out_dir = "out";

  DataSchema schema;

  SpecConfig spec{};  // kind=LD, horizon=7, lags=7, n_fourier=4, dow=true

  PriorMode prior_mode = PriorMode::Roughness;
  PriorConfig prior{};  // rho=4, kappa=1

  // estimate-scale sampler defaults (50k retained after 5k burn-in)
  long draws = 55000;
  long burn = 5000;
  long thin = 1;
  bool dump_chain = false;

  CovMode cov = CovMode::Plain;
  double level = 0.90;
  long n_sim = 100000;

  std::uint64_t seed = 1;
  int workers = 1;

  // simulate grid
  std::vector<Eigen::Index> t_list{200, 500, 1000};
  std::vector<std::string> estimators{"gmm", "qb_flat", "qb_rp"};
  int replications = 200;
  DgpParams dgp{};
  int mc_lags = 2;
  long mc_draws = 25000;
  long mc_burn = 5000;

  // diagnose
  std::vector<int> placebo_lags{1, 2, 3, 4, 5, 6, 7};
  int leads = 8;

  // make-synthetic
  long n_days = 1096;

  static RunConfig from_key_values(const std::string& command, const KeyValues& kv);
  std::map<std::string, std::string> to_key_values() const;

  McGrid to_grid() const;
};

const char* to_string(SpecKind kind);
const char* to_string(CovMode mode);
const char* to_string(PriorMode mode);

}  // namespace lpqb
