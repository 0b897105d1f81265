#include <doctest.h>

#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/inference.hpp"
#include "lpqb/sampler.hpp"
#include "lpqb/simulate.hpp"
#include "lpqb/stats.hpp"
#include "test_support.hpp"

using namespace lpqb;

TEST_SUITE("inference") {

TEST_CASE("pointwise intervals: quantile arithmetic") {
  Eigen::VectorXd theta(3);
  theta << 0.0, 1.0, -2.0;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
  v(0, 0) = 1.0;
  v(1, 1) = 4.0;
  const auto iv = pointwise_intervals(theta, v, 0.90, {0, 1, 2});
  CHECK(iv[0].lo == doctest::Approx(-1.6448536269514722).epsilon(1e-9));
  CHECK(iv[0].hi == doctest::Approx(1.6448536269514722).epsilon(1e-9));
  CHECK(iv[1].lo == doctest::Approx(1.0 - 2.0 * 1.6448536269514722).epsilon(1e-9));
  // zero variance gives a degenerate interval
  CHECK(iv[2].lo == doctest::Approx(-2.0));
  CHECK(iv[2].hi == doctest::Approx(-2.0));

  // wider level strictly contains the narrower one
  const auto iv95 = pointwise_intervals(theta, v, 0.95, {0});
  CHECK(iv95[0].lo < iv[0].lo);
  CHECK(iv95[0].hi > iv[0].hi);

  Eigen::MatrixXd broken = v;
  broken(1, 1) = -0.5;
  CHECK_THROWS_AS(pointwise_intervals(theta, broken, 0.9, {1}), NumericError);
}

TEST_CASE("sup-t: single coordinate matches the pointwise quantile") {
  Eigen::VectorXd est(1);
  est << 0.3;
  Eigen::MatrixXd v(1, 1);
  v << 2.25;
  const auto band = sup_t_band(est, v, 0.90, 300000, 5);
  CHECK(std::abs(band.critical_value - 1.6448536269514722) < 0.01);
  CHECK(band.band[0].lo == doctest::Approx(0.3 - band.critical_value * 1.5));
}

TEST_CASE("sup-t: independence closed form at eight coordinates") {
  const int m = 8;
  const Eigen::VectorXd est = Eigen::VectorXd::Zero(m);
  const Eigen::MatrixXd v = Eigen::MatrixXd::Identity(m, m);
  const auto band = sup_t_band(est, v, 0.90, 400000, 6);
  // max of independent |N(0,1)| has quantile Phi^{-1}((1 + 0.9^{1/8}) / 2)
  const double closed = normal_quantile(0.5 * (1.0 + std::pow(0.9, 1.0 / 8.0)));
  CHECK(std::abs(band.critical_value - closed) < 0.01);
  CHECK(closed == doctest::Approx(2.49).epsilon(0.01));
}

TEST_CASE("sup-t: perfect correlation degenerates to one normal") {
  const int m = 5;
  const Eigen::VectorXd est = Eigen::VectorXd::Zero(m);
  const Eigen::MatrixXd v = Eigen::MatrixXd::Ones(m, m);
  const auto band = sup_t_band(est, v, 0.90, 300000, 7);
  CHECK(std::abs(band.critical_value - 1.6448536269514722) < 0.01);
}

TEST_CASE("sup-t: zero-variance coordinates are dropped, not fatal") {
  Eigen::VectorXd est(3);
  est << 1.0, 2.0, 3.0;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(3, 3);
  v(1, 1) = 0.0;
  const auto band = sup_t_band(est, v, 0.90, 50000, 8);
  CHECK(band.n_dropped == 1);
  CHECK(band.band[1].lo == doctest::Approx(2.0));
  CHECK(band.band[1].hi == doctest::Approx(2.0));
  CHECK(band.band[0].lo < 1.0);
}

TEST_CASE("sup-t: deterministic and worker-invariant") {
  RngStream rng(61, 0);
  const int m = 6;
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
  const Eigen::MatrixXd v = a * a.transpose() + Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd est = Eigen::VectorXd::Zero(m);
  const auto b1 = sup_t_band(est, v, 0.90, 100000, 99, 1);
  const auto b2 = sup_t_band(est, v, 0.90, 100000, 99, 4);
  CHECK(b1.critical_value == b2.critical_value);
  const auto b3 = sup_t_band(est, v, 0.90, 100000, 100, 1);
  CHECK(b1.critical_value != b3.critical_value);
  // two seeds agree to simulation accuracy
  CHECK(std::abs(b1.critical_value - b3.critical_value) < 0.02);
}

TEST_CASE("sup-t band always contains the pointwise interval") {
  RngStream rng(62, 0);
  const int m = 8;
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal();
  const Eigen::MatrixXd v = a * a.transpose();
  Eigen::VectorXd est(m);
  for (int i = 0; i < m; ++i) est[i] = rng.normal();
  std::vector<int> coords(m);
  for (int i = 0; i < m; ++i) coords[static_cast<std::size_t>(i)] = i;
  const auto points = pointwise_intervals(est, v, 0.9, coords);
  const auto band = sup_t_band(est, v, 0.9, 50000, 3);
  for (int i = 0; i < m; ++i) {
    CHECK(band.band[static_cast<std::size_t>(i)].lo <= points[static_cast<std::size_t>(i)].lo);
    CHECK(band.band[static_cast<std::size_t>(i)].hi >= points[static_cast<std::size_t>(i)].hi);
  }
}

TEST_CASE("extract_irf: shapes, coordinates, per-treatment bands") {
  // two-treatment dataset via the DGP plus a clone treatment
  DgpParams params;
  params.n_obs = 250;
  RngStream rng(63, 0);
  Dataset one = generate_dgp(params, rng);
  Eigen::MatrixXd treats(one.n(), 2), instrs(one.n(), 2);
  treats.col(0) = one.treatments.col(0);
  instrs.col(0) = one.instruments.col(0);
  for (Eigen::Index i = 0; i < one.n(); ++i) {
    treats(i, 1) = 0.6 * treats(i, 0) + rng.normal();
    instrs(i, 1) = treats(i, 1) + 0.3 * rng.normal();
  }
  DatasetOptions opts;
  opts.standardize_treatments = false;
  const Dataset data = build_dataset(one.dates, "y", one.outcome, {"r1", "r2"}, treats,
                                     {"z1", "z2"}, instrs, {}, Eigen::MatrixXd(one.n(), 0), {},
                                     Eigen::MatrixXd(one.n(), 0), opts);
  SpecConfig spec;
  spec.horizon = 7;
  spec.lags = 1;
  spec.n_fourier = 0;
  spec.day_of_week = false;
  const LpDesign design = build_design(data, spec);
  const MomentModel model(design, CovMode::Plain);
  const Eigen::MatrixXd v = model.inference_covariance(model.theta_star());
  const IrfResult irf = extract_irf(model.theta_star(), v, design, 0.9, 20000, 17);

  REQUIRE(irf.rows.size() == 16);  // two treatments, eight horizons each
  CHECK(irf.critical_values.size() == 2);
  CHECK(irf.critical_values.count("r1") == 1);
  CHECK(irf.critical_values.count("r2") == 1);
  for (const auto& row : irf.rows) {
    const int m = row.treatment == "r1" ? 0 : 1;
    const int k = design.stacked_index(row.horizon, m);
    CHECK(row.estimate == doctest::Approx(model.theta_star()[k]));
    CHECK(row.band_lo <= row.ci_lo);
    CHECK(row.ci_lo <= row.estimate);
    CHECK(row.estimate <= row.ci_hi);
    CHECK(row.ci_hi <= row.band_hi);
  }
}

}  // TEST_SUITE
