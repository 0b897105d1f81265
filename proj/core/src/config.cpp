#include "lpqb/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "lpqb/errors.hpp"

namespace lpqb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : value) {
    if (ch == ',') {
      const auto t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  const auto t = trim(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i)
    out += (i ? "," : "") + std::to_string(items[i]);
  return out;
}

}  // namespace

KeyValues KeyValues::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  KeyValues kv;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: '" + path + "' line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: '" + path + "' line " + std::to_string(line_no) + ": empty key");
    kv.map[key] = value;
  }
  return kv;
}

void KeyValues::merge_from(const KeyValues& other) {
  for (const auto& [k, v] : other.map) map[k] = v;
}

namespace {

class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  std::string str(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    const auto it = kv_.map.find(key);
    return it == kv_.map.end() ? fallback : it->second;
  }

  long integer(const std::string& key, long fallback, long lo, long hi) {
    const std::string v = str(key, "");
    if (v.empty()) return check_range(key, fallback, lo, hi);
    long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
      throw ConfigError("config: key '" + key + "' has non-integer value '" + v + "'");
    return check_range(key, out, lo, hi);
  }

  double real(const std::string& key, double fallback, double lo, double hi) {
    const std::string v = str(key, "");
    if (v.empty()) return check_real_range(key, fallback, lo, hi);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
      throw ConfigError("config: key '" + key + "' has non-numeric value '" + v + "'");
    return check_real_range(key, out, lo, hi);
  }

  bool boolean(const std::string& key, bool fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' must be true/false, got '" + v + "'");
  }

  std::vector<std::string> list(const std::string& key, const std::vector<std::string>& fallback) {
    const std::string v = str(key, "");
    return v.empty() ? fallback : split_list(v);
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
    const std::string v = str(key, "");
    if (v.empty()) return fallback;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
      throw ConfigError("config: key '" + key + "' has non-integer value '" + v + "'");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [k, v] : kv_.map)
      if (!used_.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  }

 private:
  static long check_range(const std::string& key, long v, long lo, long hi) {
    if (v < lo || v > hi)
      throw ConfigError("config: key '" + key + "' value " + std::to_string(v) +
                        " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }
  static double check_real_range(const std::string& key, double v, double lo, double hi) {
    if (!(v >= lo && v <= hi))
      throw ConfigError("config: key '" + key + "' value out of range");
    return v;
  }

  const KeyValues& kv_;
  std::set<std::string> used_;
};

SpecKind parse_spec(const std::string& v) {
  if (v == "ld") return SpecKind::LongDifference;
  if (v == "level") return SpecKind::Level;
  throw ConfigError("config: spec must be 'ld' or 'level', got '" + v + "'");
}

CovMode parse_cov(const std::string& v) {
  if (v == "plain") return CovMode::Plain;
  if (v == "block") return CovMode::BlockDiag;
  if (v == "har") return CovMode::Har;
  throw ConfigError("config: cov must be plain/block/har, got '" + v + "'");
}

PriorMode parse_prior(const std::string& v) {
  if (v == "rp") return PriorMode::Roughness;
  if (v == "flat") return PriorMode::Flat;
  throw ConfigError("config: prior must be 'rp' or 'flat', got '" + v + "'");
}

}  // namespace

const char* to_string(SpecKind kind) {
  return kind == SpecKind::LongDifference ? "ld" : "level";
}
const char* to_string(CovMode mode) {
  switch (mode) {
    case CovMode::Plain: return "plain";
    case CovMode::BlockDiag: return "block";
    case CovMode::Har: return "har";
  }
  return "plain";
}
const char* to_string(PriorMode mode) {
  return mode == PriorMode::Roughness ? "rp" : "flat";
}

RunConfig RunConfig::from_key_values(const std::string& command, const KeyValues& kv) {
  RunConfig c;
  c.command = command;
  Reader r(kv);
  r.str("command", "");  // manifests carry it; the subcommand decides

  c.data = r.str("data", "");
  c.weather = r.str("weather", "");
  c.capacity = r.str("capacity", "");
  c.out_dir = r.str("out_dir", c.out_dir);

  c.schema.date = r.str("date_col", "date");
  c.schema.outcome = r.str("outcome", "price");
  c.schema.treatments = r.list("treatments", {"wind_gen", "solar_gen"});
  c.schema.instruments = r.list("instruments", {"wind_pot", "solar_pot"});
  c.schema.controls = r.list("controls", {"load", "temp"});
  c.schema.indicators = r.list("indicators", {"holiday"});
  if (kv.has("controls") && r.str("controls", "") == "none") c.schema.controls.clear();
  if (kv.has("indicators") && r.str("indicators", "") == "none") c.schema.indicators.clear();

  c.spec.kind = parse_spec(r.str("spec", "ld"));
  c.spec.horizon = static_cast<int>(r.integer("horizon", 7, 0, 10000));
  c.spec.lags = static_cast<int>(r.integer("lags", 7, 0, 10000));
  c.spec.n_fourier = static_cast<int>(r.integer("fourier", 4, 0, 1000));
  c.spec.day_of_week = r.boolean("dow", true);

  c.prior_mode = parse_prior(r.str("prior", "rp"));
  c.prior.rho = r.real("rho", 4.0, 1e-9, 1e9);
  c.prior.kappa = r.real("kappa", 1.0, 1e-9, 1e9);

  c.draws = r.integer("draws", c.draws, 1, 100000000);
  c.burn = r.integer("burn", c.burn, 0, 100000000);
  c.thin = r.integer("thin", c.thin, 1, 1000000);
  if (c.burn >= c.draws) throw ConfigError("config: need draws > burn");
  c.dump_chain = r.boolean("dump_chain", false);

  c.cov = parse_cov(r.str("cov", "plain"));
  c.level = r.real("level", 0.90, 0.5, 0.999);
  c.n_sim = r.integer("n_sim", c.n_sim, 100, 1000000000);

  c.seed = r.u64("seed", 1);
  c.workers = static_cast<int>(r.integer("workers", 1, 1, 1024));

  auto to_long = [](const std::string& s, const char* key) {
    long out = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ConfigError(std::string("config: key '") + key + "' has non-integer entry '" + s +
                        "'");
    return out;
  };
  c.t_list.clear();
  for (const auto& s : r.list("t_list", {"200", "500", "1000"}))
    c.t_list.push_back(static_cast<Eigen::Index>(to_long(s, "t_list")));
  c.estimators = r.list("estimators", c.estimators);
  c.replications = static_cast<int>(r.integer("replications", 200, 1, 1000000));
  c.dgp.beta = r.real("dgp_beta", 1.0, -1e9, 1e9);
  c.dgp.phi = r.real("dgp_phi", 0.7, -0.999999, 0.999999);
  c.dgp.pi_z = r.real("dgp_pi_z", 1.0, -1e9, 1e9);
  c.dgp.kappa_u = r.real("dgp_kappa_u", 0.5, -1e9, 1e9);
  c.dgp.sigma_u = r.real("dgp_sigma_u", 1.0, 0.0, 1e9);
  c.dgp.sigma_v = r.real("dgp_sigma_v", 1.0, 1e-12, 1e9);
  c.dgp.sigma_e = r.real("dgp_sigma_e", 1.0, 1e-12, 1e9);
  c.dgp.burn_in = static_cast<int>(r.integer("dgp_burn_in", 200, 0, 1000000));
  c.mc_lags = static_cast<int>(r.integer("mc_lags", 2, 0, 10000));
  c.mc_draws = r.integer("mc_draws", 25000, 1, 100000000);
  c.mc_burn = r.integer("mc_burn", 5000, 0, 100000000);
  if (c.mc_burn >= c.mc_draws) throw ConfigError("config: need mc_draws > mc_burn");

  c.placebo_lags.clear();
  for (const auto& s : r.list("placebo_lags", {"1", "2", "3", "4", "5", "6", "7"}))
    c.placebo_lags.push_back(static_cast<int>(to_long(s, "placebo_lags")));
  c.leads = static_cast<int>(r.integer("leads", 8, 1, 10000));

  c.n_days = r.integer("n_days", 1096, 60, 10000000);

  r.reject_unknown();
  return c;
}

std::map<std::string, std::string> RunConfig::to_key_values() const {
  std::map<std::string, std::string> kv;
  kv["command"] = command;
  kv["data"] = data;
  kv["weather"] = weather;
  kv["capacity"] = capacity;
  kv["out_dir"] = out_dir;
  kv["date_col"] = schema.date;
  kv["outcome"] = schema.outcome;
  kv["treatments"] = join(schema.treatments);
  kv["instruments"] = join(schema.instruments);
  kv["controls"] = schema.controls.empty() ? "none" : join(schema.controls);
  kv["indicators"] = schema.indicators.empty() ? "none" : join(schema.indicators);
  kv["spec"] = to_string(spec.kind);
  kv["horizon"] = std::to_string(spec.horizon);
  kv["lags"] = std::to_string(spec.lags);
  kv["fourier"] = std::to_string(spec.n_fourier);
  kv["dow"] = spec.day_of_week ? "true" : "false";
  kv["prior"] = to_string(prior_mode);
  kv["rho"] = std::to_string(prior.rho);
  kv["kappa"] = std::to_string(prior.kappa);
  kv["draws"] = std::to_string(draws);
  kv["burn"] = std::to_string(burn);
  kv["thin"] = std::to_string(thin);
  kv["dump_chain"] = dump_chain ? "true" : "false";
  kv["cov"] = to_string(cov);
  kv["level"] = std::to_string(level);
  kv["n_sim"] = std::to_string(n_sim);
  kv["seed"] = std::to_string(seed);
  kv["workers"] = std::to_string(workers);
  kv["t_list"] = join_numbers(std::vector<long>(t_list.begin(), t_list.end()));
  kv["estimators"] = join(estimators);
  kv["replications"] = std::to_string(replications);
  kv["dgp_beta"] = std::to_string(dgp.beta);
  kv["dgp_phi"] = std::to_string(dgp.phi);
  kv["dgp_pi_z"] = std::to_string(dgp.pi_z);
  kv["dgp_kappa_u"] = std::to_string(dgp.kappa_u);
  kv["dgp_sigma_u"] = std::to_string(dgp.sigma_u);
  kv["dgp_sigma_v"] = std::to_string(dgp.sigma_v);
  kv["dgp_sigma_e"] = std::to_string(dgp.sigma_e);
  kv["dgp_burn_in"] = std::to_string(dgp.burn_in);
  kv["mc_lags"] = std::to_string(mc_lags);
  kv["mc_draws"] = std::to_string(mc_draws);
  kv["mc_burn"] = std::to_string(mc_burn);
  kv["placebo_lags"] = join_numbers(placebo_lags);
  kv["leads"] = std::to_string(leads);
  kv["n_days"] = std::to_string(n_days);
  return kv;
}

McGrid RunConfig::to_grid() const {
  McGrid g;
  g.sample_sizes = t_list;
  g.estimators = estimators;
  g.replications = replications;
  g.dgp = dgp;
  g.horizon = spec.horizon;
  g.lags = mc_lags;
  g.cov = cov;
  g.level = level;
  g.n_sim_band = n_sim;
  g.mcmc_draws = mc_draws;
  g.mcmc_burn = mc_burn;
  g.prior = prior;
  g.seed = seed;
  g.workers = workers;
  return g;
}

}  // namespace lpqb
