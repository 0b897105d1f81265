#include <doctest.h>

#include <set>

#include "lpqb/errors.hpp"
#include "lpqb/lp_design.hpp"
#include "lpqb/rng.hpp"
#include "test_support.hpp"

using namespace lpqb;

namespace {

Dataset design_test_data(Eigen::Index n) {
  RngStream rng(101, 0);
  Eigen::VectorXd y(n), r(n), z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z[i] = rng.normal();
    r[i] = z[i] + 0.5 * rng.normal();
    y[i] = 0.2 * static_cast<double>(i) + rng.normal();
  }
  return test::tiny_dataset(y, r, z);
}

}  // namespace

TEST_SUITE("lp_design") {

TEST_CASE("trim bounds: counting") {
  const auto lvl = trim_bounds(20, 2, 3, SpecKind::Level);
  CHECK(lvl.first == 2);
  CHECK(lvl.last == 16);
  CHECK(lvl.count() == 15);

  const auto ld = trim_bounds(20, 2, 3, SpecKind::LongDifference);
  CHECK(ld.first == 3);  // differences need one extra lag
  CHECK(ld.last == 16);
  CHECK(ld.count() == 14);

  CHECK_THROWS_AS(trim_bounds(5, 3, 3, SpecKind::Level), DataError);
  CHECK_THROWS_AS(trim_bounds(5, 3, 3, SpecKind::LongDifference), DataError);
}

TEST_CASE("long-differenced dependents and reconstruction") {
  const auto data = design_test_data(60);
  SpecConfig cfg;
  cfg.kind = SpecKind::LongDifference;
  cfg.horizon = 3;
  cfg.lags = 2;
  cfg.n_fourier = 0;
  cfg.day_of_week = false;
  const auto d = build_design(data, cfg);

  CHECK(d.n_cols() == 1 + 1 + 2);  // treatment, intercept, two lags
  for (Eigen::Index i = 0; i < d.n_obs(); ++i) {
    const auto t = d.origins[static_cast<std::size_t>(i)];
    CHECK(d.Y(i, 0) == doctest::Approx(data.outcome[t] - data.outcome[t - 1]).epsilon(1e-14));
    for (int h = 0; h <= 3; ++h) {
      // adding back y_{t-1} recovers the raw series exactly
      CHECK(d.Y(i, h) + data.outcome[t - 1] == doctest::Approx(data.outcome[t + h]).epsilon(1e-14));
    }
    // lag columns hold first differences
    CHECK(d.X(i, 2) == doctest::Approx(data.outcome[t - 1] - data.outcome[t - 2]));
  }
}

TEST_CASE("level dependents") {
  const auto data = design_test_data(60);
  SpecConfig cfg;
  cfg.kind = SpecKind::Level;
  cfg.horizon = 2;
  cfg.lags = 1;
  cfg.n_fourier = 0;
  cfg.day_of_week = false;
  const auto d = build_design(data, cfg);
  for (Eigen::Index i = 0; i < d.n_obs(); ++i) {
    const auto t = d.origins[static_cast<std::size_t>(i)];
    for (int h = 0; h <= 2; ++h) CHECK(d.Y(i, h) == doctest::Approx(data.outcome[t + h]));
    CHECK(d.X(i, 2) == doctest::Approx(data.outcome[t - 1]));  // level lag
  }
}

TEST_CASE("column count and order") {
  const auto data = design_test_data(120);
  SpecConfig cfg;
  cfg.kind = SpecKind::LongDifference;
  cfg.horizon = 2;
  cfg.lags = 3;
  cfg.n_fourier = 2;
  cfg.day_of_week = true;
  const auto d = build_design(data, cfg);
  // J = treatments + intercept + L + 2N + controls (here only 6 dow)
  CHECK(d.n_cols() == 1 + 1 + 3 + 4 + 6);
  CHECK(d.column_names[0] == "r");
  CHECK(d.column_names[1] == "const");
  CHECK(d.column_names[2] == "dy_lag1");
  CHECK(d.column_names[5] == "sin1");
  CHECK(d.column_names[7] == "cos1");
  CHECK(d.column_names[9] == "dow_tue");
}

TEST_CASE("X and Z differ in exactly the treatment columns") {
  const auto data = design_test_data(80);
  SpecConfig cfg;
  cfg.horizon = 2;
  cfg.lags = 2;
  cfg.n_fourier = 1;
  cfg.day_of_week = false;
  const auto d = build_design(data, cfg);
  int diff_cols = 0;
  for (int c = 0; c < d.n_cols(); ++c)
    if ((d.X.col(c) - d.Z.col(c)).cwiseAbs().maxCoeff() > 0) ++diff_cols;
  CHECK(diff_cols == d.n_treatments());
  CHECK((d.X.col(1) - d.Z.col(1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stacked index map is a bijection") {
  const auto data = design_test_data(60);
  SpecConfig cfg;
  cfg.horizon = 3;
  cfg.lags = 1;
  cfg.n_fourier = 0;
  cfg.day_of_week = false;
  const auto d = build_design(data, cfg);
  std::set<int> seen;
  for (int h = 0; h <= d.horizon; ++h)
    for (int j = 0; j < d.n_cols(); ++j) {
      const int k = d.stacked_index(h, j);
      CHECK(k >= 0);
      CHECK(k < d.stacked_dim());
      CHECK(seen.insert(k).second);
      const auto [hh, jj] = d.coord(k);
      CHECK(hh == h);
      CHECK(jj == j);
    }
  CHECK(static_cast<int>(seen.size()) == d.stacked_dim());
}

TEST_CASE("sample must exceed the column count") {
  const auto data = design_test_data(20);
  SpecConfig cfg;
  cfg.horizon = 3;
  cfg.lags = 2;
  cfg.n_fourier = 2;
  cfg.day_of_week = true;  // J = 13 > T
  CHECK_THROWS_AS(build_design(data, cfg), DataError);
}

TEST_CASE("lead design shifts lags past the dependent leads") {
  const auto data = design_test_data(80);
  SpecConfig cfg;
  cfg.kind = SpecKind::LongDifference;  // overridden to level inside
  cfg.horizon = 7;
  cfg.lags = 2;
  cfg.n_fourier = 0;
  cfg.day_of_week = false;
  const auto d = build_lead_design(data, cfg, 8);
  CHECK(d.kind == SpecKind::Level);
  CHECK(d.horizon == 7);
  REQUIRE(d.y_offsets.size() == 8);
  CHECK(d.y_offsets.front() == -8);
  CHECK(d.y_offsets.back() == -1);
  CHECK(d.column_names[2] == "y_lag9");
  for (Eigen::Index i = 0; i < d.n_obs(); ++i) {
    const auto t = d.origins[static_cast<std::size_t>(i)];
    CHECK(d.Y(i, 0) == doctest::Approx(data.outcome[t - 8]));
    CHECK(d.Y(i, 7) == doctest::Approx(data.outcome[t - 1]));
    CHECK(d.X(i, 2) == doctest::Approx(data.outcome[t - 9]));   // first shifted lag
    CHECK(d.X(i, 3) == doctest::Approx(data.outcome[t - 10]));  // second
  }
}

}  // TEST_SUITE
