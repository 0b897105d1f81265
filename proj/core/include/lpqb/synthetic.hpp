#pragma once

#include <cstdint>
#include <string>

#include "lpqb/dataset.hpp"

namespace lpqb {

/// Electricity-like demo dataset: a persistent price series driven by a
/// seasonal demand confounder, two renewable generation treatments tied to
/// weather potentials, load/temperature controls, day-of-week structure and
/// a handful of fixed holidays. Small enough for offline end-to-end runs.
struct SyntheticConfig {
  long n_days = 1096;
  std::uint64_t seed = 20150101;
  std::string start_date = "2015-01-01";
};

/// Column-role map matching write_synthetic_dataset output.
DataSchema synthetic_schema();

/// Writes the dataset CSV with columns
/// (date, price, wind_gen, solar_gen, wind_pot, solar_pot, load, temp, holiday).
void write_synthetic_dataset(const std::string& csv_path, const SyntheticConfig& config);

/// Writes the holiday calendar used by the generator (date, name).
void write_synthetic_holidays(const std::string& csv_path, const SyntheticConfig& config);

}  // namespace lpqb
