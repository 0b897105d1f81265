#include <doctest.h>

#include <array>
#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/instruments.hpp"
#include "test_support.hpp"

using namespace lpqb;

TEST_SUITE("instruments") {

TEST_CASE("wind speed") {
  CHECK(wind_speed(3.0, 4.0) == doctest::Approx(5.0));
  CHECK(wind_speed(0.0, 0.0) == 0.0);
  CHECK(wind_speed(-6.0, 8.0) == doctest::Approx(10.0));
}

TEST_CASE("power curve: segments and boundaries") {
  const PowerCurveParams p;
  CHECK(power_curve(2.0, p) == 0.0);
  CHECK(power_curve(3.0, p) == 0.0);    // cut-in maps into the ramp at zero
  CHECK(power_curve(8.0, p) == doctest::Approx(485.0 / 2170.0).epsilon(1e-12));
  CHECK(power_curve(13.0, p) == 1.0);   // rated
  CHECK(power_curve(24.999, p) == 1.0);
  CHECK(power_curve(25.0, p) == 0.0);   // cut-out drop
  CHECK(power_curve(30.0, p) == 0.0);
}

TEST_CASE("power curve: continuity at cut-in and rated, monotone to rated") {
  const PowerCurveParams p;
  CHECK(power_curve(3.0 + 1e-9, p) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(power_curve(13.0 - 1e-9, p) == doctest::Approx(1.0).epsilon(1e-6));
  double prev = -1.0;
  for (double ws = 0.0; ws <= 13.0; ws += 0.01) {
    const double q = power_curve(ws, p);
    CHECK(q >= prev - 1e-15);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    prev = q;
  }
  PowerCurveParams bad;
  bad.rated = 2.0;
  CHECK_THROWS_AS(power_curve(5.0, bad), ConfigError);
}

TEST_CASE("daily aggregation") {
  std::array<double, 24> ones{};
  ones.fill(1.0);
  CHECK(daily_wind_potential(ones) == 1.0);
  std::array<double, 24> half{};
  for (int h = 0; h < 12; ++h) half[static_cast<std::size_t>(h)] = 1.0;
  CHECK(daily_wind_potential(half) == doctest::Approx(0.5));
  std::array<double, 23> partial{};
  CHECK_THROWS_AS(daily_wind_potential(partial), DataError);

  std::array<double, 24> ssr{};
  CHECK(daily_solar_potential(ssr) == 0.0);
  ssr[7] = 5.0;
  CHECK(daily_solar_potential(ssr) == doctest::Approx(5.0));
  std::array<double, 24> doubled = ssr;
  for (auto& v : doubled) v *= 2.0;
  CHECK(daily_solar_potential(doubled) == doctest::Approx(2.0 * daily_solar_potential(ssr)));
  ssr[3] = -0.1;
  CHECK_THROWS_AS(daily_solar_potential(ssr), DataError);
}

TEST_CASE("capacity weights") {
  Eigen::VectorXd even(2);
  even << 1.0, 1.0;
  CHECK((capacity_weights(even) - Eigen::VectorXd::Constant(2, 0.5)).cwiseAbs().maxCoeff() <
        1e-15);
  Eigen::VectorXd skew(2);
  skew << 3.0, 1.0;
  const auto w = capacity_weights(skew);
  CHECK(w[0] == doctest::Approx(0.75));
  CHECK(w[1] == doctest::Approx(0.25));
  Eigen::VectorXd zero_one(2);
  zero_one << 0.0, 5.0;
  const auto w2 = capacity_weights(zero_one);
  CHECK(w2[0] == 0.0);
  CHECK(w2[1] == 1.0);
  CHECK(std::abs(w.sum() - 1.0) < 1e-12);
  CHECK_THROWS_AS(capacity_weights(Eigen::VectorXd::Zero(3)), DataError);
}

TEST_CASE("zone aggregation") {
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(5, 0.2);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(5, 0.6);
  Eigen::VectorXd w(2);
  w << 0.5, 0.5;
  const auto mixed = zone_aggregate({a, b}, w);
  CHECK((mixed - Eigen::VectorXd::Constant(5, 0.4)).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::VectorXd w1(1);
  w1 << 1.0;
  CHECK((zone_aggregate({b}, w1) - b).cwiseAbs().maxCoeff() == 0.0);

  // identical cells: weights do not matter
  Eigen::VectorXd skew(2);
  skew << 0.9, 0.1;
  CHECK((zone_aggregate({b, b}, skew) - b).cwiseAbs().maxCoeff() < 1e-15);

  // convexity: the aggregate stays inside the cell envelope
  Eigen::VectorXd c(3), d(3);
  c << 0.1, 0.5, 0.9;
  d << 0.3, 0.2, 0.8;
  Eigen::VectorXd wv(2);
  wv << 0.7, 0.3;
  const auto agg = zone_aggregate({c, d}, wv);
  for (int i = 0; i < 3; ++i) {
    CHECK(agg[i] >= std::min(c[i], d[i]) - 1e-15);
    CHECK(agg[i] <= std::max(c[i], d[i]) + 1e-15);
  }

  const Eigen::VectorXd shorter = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(zone_aggregate({a, shorter}, w), DataError);
  Eigen::VectorXd badw(2);
  badw << 0.5, 0.4;
  CHECK_THROWS_AS(zone_aggregate({a, b}, badw), DataError);
}

namespace {

std::string weather_csv(bool drop_one_hour = false) {
  std::string out = "cell_id,timestamp,u100,v100,ssr\n";
  for (const char* cell : {"c1", "c2"}) {
    for (int day = 1; day <= 2; ++day) {
      for (int h = 0; h < 24; ++h) {
        if (drop_one_hour && std::string(cell) == "c2" && day == 2 && h == 23) continue;
        char buf[96];
        const double u = cell[1] == '1' ? 6.0 : 3.0;
        std::snprintf(buf, sizeof(buf), "%s,2015-01-0%d %02d:00,%.1f,%.1f,%.1f\n", cell, day, h,
                      u, 4.0, h >= 8 && h < 16 ? 2.0 : 0.0);
        out += buf;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("zone potential pipeline on a tiny grid") {
  test::TempDir tmp("instruments");
  test::write_file(tmp.file("weather.csv"), weather_csv());
  test::write_file(tmp.file("capacity.csv"),
                   "cell_id,zone,wind_mw,solar_mw\n"
                   "c1,west,1.0,1.0\n"
                   "c2,west,1.0,1.0\n"
                   "c1,east,2.0,1.0\n");
  const auto rows = build_zone_potentials(tmp.file("weather.csv"), tmp.file("capacity.csv"));
  REQUIRE(rows.size() == 4);  // two zones, two days

  // c1: ws = sqrt(36+16) = 7.2111; c2: ws = 5
  const PowerCurveParams p;
  const double q1 = power_curve(std::sqrt(52.0), p);
  const double q2 = power_curve(5.0, p);
  CHECK(rows[0].zone == "west");
  CHECK(rows[0].wind == doctest::Approx(0.5 * (q1 + q2)));
  CHECK(rows[0].solar == doctest::Approx(16.0));  // mean of equal cells = 8 h * 2.0
  // east holds only c1
  CHECK(rows[2].zone == "east");
  CHECK(rows[2].wind == doctest::Approx(q1));
  CHECK(format_date(rows[2].date) == "2015-01-01");
}

TEST_CASE("pipeline errors: partial day, unknown cell, empty capacity") {
  test::TempDir tmp("instruments2");
  test::write_file(tmp.file("weather.csv"), weather_csv());
  test::write_file(tmp.file("partial.csv"), weather_csv(/*drop_one_hour=*/true));
  test::write_file(tmp.file("cap_missing.csv"),
                   "cell_id,zone,wind_mw,solar_mw\nc9,west,1.0,1.0\n");
  test::write_file(tmp.file("cap_empty.csv"), "cell_id,zone,wind_mw,solar_mw\n");
  test::write_file(tmp.file("cap_zero.csv"),
                   "cell_id,zone,wind_mw,solar_mw\nc1,west,0.0,0.0\nc2,west,0.0,1.0\n");
  test::write_file(tmp.file("cap.csv"),
                   "cell_id,zone,wind_mw,solar_mw\nc1,west,1.0,1.0\nc2,west,1.0,1.0\n");

  CHECK_THROWS_AS(build_zone_potentials(tmp.file("partial.csv"), tmp.file("cap.csv")), DataError);
  CHECK_THROWS_AS(build_zone_potentials(tmp.file("weather.csv"), tmp.file("cap_missing.csv")),
                  DataError);
  CHECK_THROWS_AS(build_zone_potentials(tmp.file("weather.csv"), tmp.file("cap_empty.csv")),
                  DataError);
  CHECK_THROWS_AS(build_zone_potentials(tmp.file("weather.csv"), tmp.file("cap_zero.csv")),
                  DataError);
}

}  // TEST_SUITE
