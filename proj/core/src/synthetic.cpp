#include "lpqb/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "lpqb/csv.hpp"
#include "lpqb/errors.hpp"
#include "lpqb/rng.hpp"

namespace lpqb {

namespace {

constexpr double kTwoPi = 6.283185307179586476;

struct HolidayDef {
  unsigned month;
  unsigned day;
  const char* name;
};

constexpr HolidayDef kHolidays[] = {
    {1, 1, "new_year"},         {6, 5, "constitution_day"}, {12, 24, "christmas_eve"},
    {12, 25, "christmas_day"},  {12, 26, "second_christmas_day"},
    {12, 31, "new_years_eve"},
};

bool is_holiday(Date d) {
  const std::chrono::year_month_day ymd{d};
  return std::any_of(std::begin(kHolidays), std::end(kHolidays), [&](const HolidayDef& h) {
    return static_cast<unsigned>(ymd.month()) == h.month &&
           static_cast<unsigned>(ymd.day()) == h.day;
  });
}

}  // namespace

DataSchema synthetic_schema() {
  DataSchema s;
  s.date = "date";
  s.outcome = "price";
  s.treatments = {"wind_gen", "solar_gen"};
  s.instruments = {"wind_pot", "solar_pot"};
  s.controls = {"load", "temp"};
  s.indicators = {"holiday"};
  return s;
}

void write_synthetic_dataset(const std::string& csv_path, const SyntheticConfig& config) {
  if (config.n_days < 60) throw ConfigError("make-synthetic: n_days must be >= 60");
  const Date start = parse_date(config.start_date);
  RngStream rng(config.seed, 0x53594e54ULL);

  // Weekly price pattern, Monday..Sunday; weekends clear lower.
  const double dow_effect[7] = {0.6, 0.8, 0.9, 0.8, 0.5, -1.6, -2.2};

  double conf = 0.0;      // slow demand-side confounder hitting load and price
  double wind_ar = 0.0;
  double temp_ar = 0.0;
  double load_ar = 0.0;
  double price_prev = 40.0;

  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(config.n_days));
  for (long i = 0; i < config.n_days; ++i) {
    const Date d = start + std::chrono::days(i);
    const double s = year_position(d);
    const int w = weekday_index(d);
    const bool hol = is_holiday(d);

    conf = 0.7 * conf + 0.8 * rng.normal();
    wind_ar = 0.72 * wind_ar + 0.55 * rng.normal();
    temp_ar = 0.75 * temp_ar + 1.1 * rng.normal();
    load_ar = 0.6 * load_ar + 0.35 * rng.normal();

    const double wind_pot =
        std::clamp(0.47 + 0.16 * std::sin(kTwoPi * (s + 0.65)) + 0.12 * wind_ar, 0.01, 0.99);
    const double solar_pot =
        std::max(0.0, (0.31 - 0.28 * std::cos(kTwoPi * s)) * (1.0 + 0.15 * rng.normal())) + 0.005;

    const double temp = 8.5 - 8.0 * std::cos(kTwoPi * s) + temp_ar;
    const double load = 10.2 + 1.2 * std::cos(kTwoPi * s) + (w >= 5 ? -0.9 : 0.0) +
                        (hol ? -0.8 : 0.0) + 0.5 * conf + load_ar - 0.04 * (temp - 8.5);

    const double wind_gen = std::max(0.0, 5200.0 * wind_pot + 140.0 * conf + 260.0 * rng.normal());
    const double solar_gen = std::max(0.0, 3100.0 * solar_pot + 60.0 * conf + 120.0 * rng.normal());

    const double price = 7.0 + 0.52 * price_prev + 2.1 * load - 0.0021 * wind_gen -
                         0.0014 * solar_gen + 1.6 * std::sin(kTwoPi * s + 0.8) + dow_effect[w] +
                         (hol ? -2.5 : 0.0) + 1.1 * conf + 2.6 * rng.normal();
    price_prev = price;

    rows.push_back({format_date(d), format_double(price), format_double(wind_gen),
                    format_double(solar_gen), format_double(wind_pot), format_double(solar_pot),
                    format_double(load), format_double(temp), hol ? "1" : "0"});
  }
  write_csv(csv_path,
            {"date", "price", "wind_gen", "solar_gen", "wind_pot", "solar_pot", "load", "temp",
             "holiday"},
            rows);
}

void write_synthetic_holidays(const std::string& csv_path, const SyntheticConfig& config) {
  const Date start = parse_date(config.start_date);
  std::vector<std::vector<std::string>> rows;
  for (long i = 0; i < config.n_days; ++i) {
    const Date d = start + std::chrono::days(i);
    const std::chrono::year_month_day ymd{d};
    for (const auto& h : kHolidays) {
      if (static_cast<unsigned>(ymd.month()) == h.month &&
          static_cast<unsigned>(ymd.day()) == h.day)
        rows.push_back({format_date(d), h.name});
    }
  }
  write_csv(csv_path, {"date", "holiday"}, rows);
}

}  // namespace lpqb
