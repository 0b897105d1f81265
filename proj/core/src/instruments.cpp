#include "lpqb/instruments.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <map>

#include "lpqb/errors.hpp"

namespace lpqb {

double wind_speed(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v))
    throw DataError("wind_speed: non-finite component");
  return std::hypot(u, v);
}

double power_curve(double ws, const PowerCurveParams& p) {
  if (!(0.0 < p.cut_in && p.cut_in < p.rated && p.rated < p.cut_out))
    throw ConfigError("power_curve: need 0 < cut_in < rated < cut_out");
  if (!(ws >= 0.0)) throw DataError("power_curve: wind speed must be >= 0");
  if (ws < p.cut_in) return 0.0;
  if (ws >= p.cut_out) return 0.0;
  if (ws >= p.rated) return 1.0;
  const double c3 = p.cut_in * p.cut_in * p.cut_in;
  const double r3 = p.rated * p.rated * p.rated;
  return (ws * ws * ws - c3) / (r3 - c3);
}

double daily_wind_potential(std::span<const double> hourly_q) {
  if (hourly_q.size() != 24)
    throw DataError("daily_wind_potential: expected 24 hourly values, got " +
                    std::to_string(hourly_q.size()));
  double sum = 0.0;
  for (double q : hourly_q) sum += q;
  return sum / 24.0;
}

double daily_solar_potential(std::span<const double> hourly_ssr) {
  if (hourly_ssr.size() != 24)
    throw DataError("daily_solar_potential: expected 24 hourly values, got " +
                    std::to_string(hourly_ssr.size()));
  double sum = 0.0;
  for (double s : hourly_ssr) {
    if (!(s >= 0.0)) throw DataError("daily_solar_potential: negative radiation value");
    sum += s;
  }
  return sum;
}

Eigen::VectorXd capacity_weights(const Eigen::VectorXd& capacities) {
  for (Eigen::Index i = 0; i < capacities.size(); ++i)
    if (!(capacities[i] >= 0.0))
      throw DataError("capacity_weights: capacities must be >= 0");
  const double total = capacities.sum();
  if (!(total > 0.0)) throw DataError("capacity_weights: all capacities are zero");
  return capacities / total;
}

Eigen::VectorXd zone_aggregate(const std::vector<Eigen::VectorXd>& cells,
                               const Eigen::VectorXd& weights) {
  if (cells.empty()) throw DataError("zone_aggregate: no cell series");
  if (static_cast<Eigen::Index>(cells.size()) != weights.size())
    throw DataError("zone_aggregate: weights do not match the cell count");
  if (std::abs(weights.sum() - 1.0) > 1e-9)
    throw DataError("zone_aggregate: weights must sum to 1");
  const auto n = cells.front().size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].size() != n) throw DataError("zone_aggregate: cell series length mismatch");
    out += weights[static_cast<Eigen::Index>(i)] * cells[i];
  }
  return out;
}

namespace {

struct HourStamp {
  Date date;
  int hour;
};

HourStamp parse_hour_stamp(const std::string& text) {
  if (text.size() < 13 || (text[10] != ' ' && text[10] != 'T'))
    throw DataError("instruments: unparseable timestamp '" + text +
                    "' (expected YYYY-MM-DD HH:MM)");
  HourStamp st;
  st.date = parse_date(text.substr(0, 10));
  const std::string hh = text.substr(11, 2);
  if (hh.size() != 2 || !std::isdigit(static_cast<unsigned char>(hh[0])) ||
      !std::isdigit(static_cast<unsigned char>(hh[1])))
    throw DataError("instruments: unparseable hour in '" + text + "'");
  st.hour = (hh[0] - '0') * 10 + (hh[1] - '0');
  if (st.hour > 23) throw DataError("instruments: hour out of range in '" + text + "'");
  return st;
}

}  // namespace

std::vector<GridCellSeries> read_weather_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int c_cell = table.require_column("cell_id");
  const int c_time = table.require_column("timestamp");
  const int c_u = table.require_column("u100");
  const int c_v = table.require_column("v100");
  const int c_ssr = table.require_column("ssr");

  // Group rows by cell in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> by_cell;
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    const auto& id = table.rows[i][static_cast<std::size_t>(c_cell)];
    auto [it, inserted] = by_cell.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back(i);
  }
  if (order.empty()) throw DataError("read_weather_csv: no data rows in '" + path + "'");

  std::vector<GridCellSeries> cells;
  for (const auto& id : order) {
    const auto& rows = by_cell[id];
    if (rows.size() % 24 != 0)
      throw DataError("read_weather_csv: cell '" + id + "' has " + std::to_string(rows.size()) +
                      " rows, not a whole number of 24-hour days");
    const auto n_days = static_cast<Eigen::Index>(rows.size() / 24);
    GridCellSeries cell;
    cell.cell_id = id;
    cell.days.reserve(static_cast<std::size_t>(n_days));
    cell.u.resize(n_days, 24);
    cell.v.resize(n_days, 24);
    cell.ssr.resize(n_days, 24);
    for (Eigen::Index d = 0; d < n_days; ++d) {
      Date day{};
      for (int h = 0; h < 24; ++h) {
        const auto& row = table.rows[rows[static_cast<std::size_t>(d * 24 + h)]];
        const auto st = parse_hour_stamp(row[static_cast<std::size_t>(c_time)]);
        if (h == 0) {
          day = st.date;
        } else if (st.date != day) {
          throw DataError("read_weather_csv: cell '" + id + "' has a partial day at " +
                          format_date(day));
        }
        if (st.hour != h)
          throw DataError("read_weather_csv: cell '" + id + "' expected hour " +
                          std::to_string(h) + " on " + format_date(day) + ", found " +
                          std::to_string(st.hour));
        const std::string ctx = "cell '" + id + "' at " + row[static_cast<std::size_t>(c_time)];
        cell.u(d, h) = parse_double(row[static_cast<std::size_t>(c_u)], ctx);
        cell.v(d, h) = parse_double(row[static_cast<std::size_t>(c_v)], ctx);
        cell.ssr(d, h) = parse_double(row[static_cast<std::size_t>(c_ssr)], ctx);
        if (cell.ssr(d, h) < 0.0)
          throw DataError("read_weather_csv: negative ssr in " + ctx);
      }
      if (!cell.days.empty() && (day - cell.days.back()).count() != 1)
        throw DataError("read_weather_csv: cell '" + id + "' has non-consecutive days around " +
                        format_date(day));
      cell.days.push_back(day);
    }
    cells.push_back(std::move(cell));
  }
  // A shared calendar keeps the zone aggregation aligned.
  for (const auto& cell : cells)
    if (cell.days != cells.front().days)
      throw DataError("read_weather_csv: cell '" + cell.cell_id +
                      "' does not cover the same dates as cell '" + cells.front().cell_id + "'");
  return cells;
}

std::vector<PotentialRow> build_zone_potentials(const std::string& weather_csv_path,
                                                const std::string& capacity_csv_path,
                                                const PowerCurveParams& params) {
  const auto cells = read_weather_csv(weather_csv_path);
  std::map<std::string, std::size_t> cell_index;
  for (std::size_t i = 0; i < cells.size(); ++i) cell_index[cells[i].cell_id] = i;
  const auto& days = cells.front().days;
  const auto n_days = static_cast<Eigen::Index>(days.size());

  // Daily potentials per cell.
  std::vector<Eigen::VectorXd> wind_daily(cells.size()), solar_daily(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    wind_daily[i].resize(n_days);
    solar_daily[i].resize(n_days);
    std::array<double, 24> q{};
    for (Eigen::Index d = 0; d < n_days; ++d) {
      for (int h = 0; h < 24; ++h)
        q[static_cast<std::size_t>(h)] =
            power_curve(wind_speed(cells[i].u(d, h), cells[i].v(d, h)), params);
      wind_daily[i][d] = daily_wind_potential(q);
      const Eigen::VectorXd ssr_row = cells[i].ssr.row(d).transpose();
      solar_daily[i][d] = daily_solar_potential(std::span<const double>(ssr_row.data(), 24));
    }
  }

  const CsvTable cap = read_csv(capacity_csv_path);
  const int c_cell = cap.require_column("cell_id");
  const int c_zone = cap.require_column("zone");
  const int c_wind = cap.require_column("wind_mw");
  const int c_solar = cap.require_column("solar_mw");
  if (cap.n_rows() == 0) throw DataError("build_zone_potentials: empty capacity file");

  struct ZoneCells {
    std::vector<std::size_t> members;
    std::vector<double> wind_mw, solar_mw;
  };
  std::vector<std::string> zone_order;
  std::map<std::string, ZoneCells> zones;
  for (std::size_t r = 0; r < cap.n_rows(); ++r) {
    const auto& id = cap.rows[r][static_cast<std::size_t>(c_cell)];
    const auto it = cell_index.find(id);
    if (it == cell_index.end())
      throw DataError("build_zone_potentials: capacity cell '" + id + "' missing from weather data");
    const auto& zone = cap.rows[r][static_cast<std::size_t>(c_zone)];
    auto [zit, inserted] = zones.try_emplace(zone);
    if (inserted) zone_order.push_back(zone);
    zit->second.members.push_back(it->second);
    const std::string ctx = "capacity row " + std::to_string(r + 2);
    zit->second.wind_mw.push_back(parse_double(cap.rows[r][static_cast<std::size_t>(c_wind)], ctx));
    zit->second.solar_mw.push_back(
        parse_double(cap.rows[r][static_cast<std::size_t>(c_solar)], ctx));
  }

  std::vector<PotentialRow> out;
  for (const auto& zone : zone_order) {
    const auto& zc = zones[zone];
    std::vector<Eigen::VectorXd> wind_series, solar_series;
    for (std::size_t m : zc.members) {
      wind_series.push_back(wind_daily[m]);
      solar_series.push_back(solar_daily[m]);
    }
    const auto n_members = static_cast<Eigen::Index>(zc.members.size());
    Eigen::VectorXd wind_w, solar_w;
    try {
      wind_w = capacity_weights(Eigen::Map<const Eigen::VectorXd>(zc.wind_mw.data(), n_members));
      solar_w = capacity_weights(Eigen::Map<const Eigen::VectorXd>(zc.solar_mw.data(), n_members));
    } catch (const DataError& e) {
      throw DataError("build_zone_potentials: zone '" + zone + "': " + e.what());
    }
    const Eigen::VectorXd wind = zone_aggregate(wind_series, wind_w);
    const Eigen::VectorXd solar = zone_aggregate(solar_series, solar_w);
    for (Eigen::Index d = 0; d < n_days; ++d)
      out.push_back({days[static_cast<std::size_t>(d)], zone, wind[d], solar[d]});
  }
  return out;
}

}  // namespace lpqb
