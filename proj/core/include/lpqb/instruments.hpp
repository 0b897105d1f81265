#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "lpqb/calendar.hpp"
#include "lpqb/csv.hpp"

namespace lpqb {

/// Turbine power-curve thresholds (m/s).
struct PowerCurveParams {
  double cut_in = 3.0;
  double rated = 13.0;
  double cut_out = 25.0;
};

/// Euclidean wind speed from the zonal and meridional components.
double wind_speed(double u, double v);

/// Normalized power output in [0, 1]: zero below cut-in, the cubic ramp
/// (WS^3 - cut_in^3) / (rated^3 - cut_in^3) on [cut_in, rated), one on
/// [rated, cut_out), zero at and above cut-out.
double power_curve(double ws, const PowerCurveParams& params = {});

/// Mean of exactly 24 hourly power-curve values; partial days are rejected.
double daily_wind_potential(std::span<const double> hourly_q);

/// Sum of exactly 24 hourly radiation values, each >= 0.
double daily_solar_potential(std::span<const double> hourly_ssr);

/// w_i = c_i / sum_j c_j; requires a positive total.
Eigen::VectorXd capacity_weights(const Eigen::VectorXd& capacities);

/// Pointwise weighted sum of equal-length cell series; weights must sum
/// to one.
Eigen::VectorXd zone_aggregate(const std::vector<Eigen::VectorXd>& cells,
                               const Eigen::VectorXd& weights);

/// Hourly reanalysis series for one grid cell.
struct GridCellSeries {
  std::string cell_id;
  std::vector<Date> days;         // one entry per complete day
  Eigen::MatrixXd u;              // days x 24, 100m zonal wind (m/s)
  Eigen::MatrixXd v;              // days x 24, 100m meridional wind (m/s)
  Eigen::MatrixXd ssr;            // days x 24, surface solar radiation, >= 0
};

/// Parses a long-format weather CSV (cell_id, timestamp, u100, v100, ssr)
/// into per-cell day blocks. Timestamps are "YYYY-MM-DD HH:MM" (or with a
/// 'T' separator); every calendar date needs exactly the hours 0..23 in
/// order, and all cells must cover the same dates.
std::vector<GridCellSeries> read_weather_csv(const std::string& path);

struct PotentialRow {
  Date date;
  std::string zone;
  double wind = 0.0;
  double solar = 0.0;
};

/// Full pipeline: per-cell daily wind and solar potentials, then
/// capacity-weighted aggregation to zones. The capacity CSV has columns
/// (cell_id, zone, wind_mw, solar_mw); every referenced cell must appear in
/// the weather data and each zone needs positive total capacity for both
/// technologies. Rows come out ordered by zone (capacity-file order), then
/// date.
std::vector<PotentialRow> build_zone_potentials(const std::string& weather_csv_path,
                                                const std::string& capacity_csv_path,
                                                const PowerCurveParams& params = {});

}  // namespace lpqb
