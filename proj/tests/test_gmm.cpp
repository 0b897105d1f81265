#include <doctest.h>

#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/gmm.hpp"
#include "lpqb/linalg.hpp"
#include "lpqb/rng.hpp"
#include "test_support.hpp"

using namespace lpqb;

TEST_SUITE("gmm") {

TEST_CASE("HAR bandwidth rule and Bartlett weights") {
  CHECK(har_bandwidth(200) == 19);
  CHECK(har_bandwidth(1000) == 42);
  CHECK(har_bandwidth(100) == 13);
  const auto w = bartlett_weights(19);
  REQUIRE(w.size() == 19);
  CHECK(w[0] == 1.0);
  for (std::size_t b = 1; b < w.size(); ++b) {
    CHECK(w[b] >= 0.0);
    CHECK(w[b] == doctest::Approx(1.0 - static_cast<double>(b) / 19.0));
    CHECK(w[b] < w[b - 1]);
  }
}

TEST_CASE("exact-fit recovery with exogenous regressors") {
  RngStream rng(21, 0);
  auto d = test::random_design(rng, 80, 4, 2);
  d.Z = d.X;  // exogenous case
  Eigen::MatrixXd beta(4, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 3; ++b) beta(a, b) = rng.normal();
  d.Y = d.X * beta;
  const Eigen::VectorXd theta = initial_iv_estimate(d);
  const Eigen::Map<const Eigen::VectorXd> beta_vec(beta.data(), beta.size());
  CHECK((theta - beta_vec).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("single horizon reduces to just-identified IV") {
  RngStream rng(22, 0);
  const auto d = test::random_design(rng, 90, 3, 0);
  const Eigen::VectorXd theta = initial_iv_estimate(d);
  const Eigen::VectorXd direct =
      (d.Z.transpose() * d.X).partialPivLu().solve(d.Z.transpose() * d.Y.col(0));
  CHECK((theta - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moment matrix: normal equations and block separability") {
  RngStream rng(23, 0);
  const auto d = test::random_design(rng, 70, 3, 2);
  const Eigen::VectorXd theta_star = initial_iv_estimate(d);
  const Eigen::MatrixXd m = moment_matrix(d, theta_star);
  CHECK(m.colwise().mean().cwiseAbs().maxCoeff() < 1e-10);

  // theta = 0: block h column mean is (1/T) sum_t Y(t,h) z_t
  const Eigen::MatrixXd m0 = moment_matrix(d, Eigen::VectorXd::Zero(d.stacked_dim()));
  for (int h = 0; h <= d.horizon; ++h) {
    const Eigen::VectorXd expect =
        (d.Z.transpose() * d.Y.col(h)) / static_cast<double>(d.n_obs());
    const Eigen::VectorXd got = m0.middleCols(h * d.n_cols(), d.n_cols()).colwise().mean();
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  // perturbing horizon 1 leaves other blocks untouched
  Eigen::VectorXd theta2 = theta_star;
  theta2.segment(d.n_cols(), d.n_cols()).array() += 0.5;
  const Eigen::MatrixXd m2 = moment_matrix(d, theta2);
  CHECK((m2.leftCols(d.n_cols()) - m.leftCols(d.n_cols())).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m2.rightCols(d.n_cols()) - m.rightCols(d.n_cols())).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m2.middleCols(d.n_cols(), d.n_cols()) - m.middleCols(d.n_cols(), d.n_cols()))
            .cwiseAbs()
            .maxCoeff() > 0.01);
}

TEST_CASE("covariance modes: block structure and HAR") {
  RngStream rng(24, 0);
  const auto d = test::random_design(rng, 120, 3, 2);
  const Eigen::VectorXd theta = initial_iv_estimate(d);
  const int j = d.n_cols();

  const auto plain = moment_covariance(d, theta, CovMode::Plain);
  const auto block = moment_covariance(d, theta, CovMode::BlockDiag);
  CHECK((plain - plain.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // diagonal blocks agree exactly; cross blocks are exact zeros
  for (int h = 0; h <= 2; ++h)
    for (int g = 0; g <= 2; ++g) {
      const Eigen::MatrixXd pb = plain.block(h * j, g * j, j, j);
      const Eigen::MatrixXd bb = block.block(h * j, g * j, j, j);
      if (h == g)
        CHECK((pb - bb).cwiseAbs().maxCoeff() == 0.0);
      else
        CHECK(bb.cwiseAbs().maxCoeff() == 0.0);
    }

  // projection idempotence: re-zeroing a block-diagonal matrix changes nothing
  // (already covered by exact equality above)

  // HAR with B = 1 collapses to Gamma_0
  const auto har1 = moment_covariance(d, theta, CovMode::Har, 1);
  CHECK((har1 - plain).cwiseAbs().maxCoeff() == 0.0);

  // white-noise scores: HAR and plain agree as T grows
  auto big = test::random_design(rng, 4000, 2, 1);
  const Eigen::VectorXd theta_big = initial_iv_estimate(big);
  const auto p_big = moment_covariance(big, theta_big, CovMode::Plain);
  const auto h_big = moment_covariance(big, theta_big, CovMode::Har);
  CHECK((h_big - p_big).norm() / p_big.norm() < 0.25);
}

TEST_CASE("weighting matrix") {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(6, 6);
  CHECK((weighting_matrix(eye, CovMode::Plain, 3) - eye).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(4, 4);
  diag.diagonal() << 4.0, 4.0, 4.0, 4.0;
  const auto w = weighting_matrix(diag, CovMode::Plain, 2);
  CHECK((w - 0.25 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  RngStream rng(25, 0);
  const auto d = test::random_design(rng, 100, 3, 2);
  const auto sigma = moment_covariance(d, initial_iv_estimate(d), CovMode::Plain);
  const auto wb = weighting_matrix(sigma, CovMode::BlockDiag, 3);
  for (int h = 0; h <= 2; ++h)
    for (int g = 0; g <= 2; ++g)
      if (h != g) CHECK(wb.block(h * 3, g * 3, 3, 3).cwiseAbs().maxCoeff() == 0.0);
  // each diagonal block inverts its sigma block
  for (int h = 0; h <= 2; ++h) {
    const Eigen::MatrixXd prod =
        wb.block(h * 3, h * 3, 3, 3) * sigma.block(h * 3, h * 3, 3, 3);
    CHECK((prod - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("two-step GMM equals theta* under exact identification") {
  RngStream rng(26, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const auto d = test::random_design(rng, 80 + 20 * rep, 2 + rep % 3, rep % 4);
    const Eigen::VectorXd theta_star = initial_iv_estimate(d);
    const auto fit = two_step_gmm(d, CovMode::Plain);
    CHECK((fit.theta - theta_star).norm() / theta_star.norm() < 1e-8);
    // W2 is not the identity in general
    CHECK((fit.w2 - Eigen::MatrixXd::Identity(fit.w2.rows(), fit.w2.cols()))
              .cwiseAbs()
              .maxCoeff() > 1e-3);
  }
}

TEST_CASE("stage one equals 2SLS computed via projection") {
  RngStream rng(27, 0);
  const auto d = test::random_design(rng, 150, 3, 1);
  // independent route: project X on Z, then per-horizon least squares
  const Eigen::MatrixXd pz =
      d.Z * (d.Z.transpose() * d.Z).ldlt().solve(d.Z.transpose() * d.X);
  Eigen::VectorXd tsls(d.stacked_dim());
  for (int h = 0; h <= d.horizon; ++h)
    tsls.segment(h * d.n_cols(), d.n_cols()) =
        (pz.transpose() * pz).ldlt().solve(pz.transpose() * d.Y.col(h));
  const Eigen::VectorXd theta_star = initial_iv_estimate(d);
  CHECK((tsls - theta_star).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("sandwich covariance") {
  // G = -I, W = Sigma = I, T = 100 gives 0.01 I
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(5, 5);
  const auto v = sandwich_covariance(-eye, eye, eye, 100);
  CHECK((v - 0.01 * eye).cwiseAbs().maxCoeff() < 1e-14);

  RngStream rng(28, 0);
  const auto d = test::random_design(rng, 120, 3, 2);
  const MomentModel model(d, CovMode::Plain);
  // W = Sigma^{-1} collapses the sandwich to (1/T)(G'WG)^{-1}
  const Eigen::MatrixXd full = sandwich_covariance(model.g_hat(), model.weighting(),
                                                   model.sigma_hat(), d.n_obs());
  const Eigen::MatrixXd collapsed =
      invert_spd(symmetrize(model.g_hat().transpose() * model.weighting() * model.g_hat())) /
      static_cast<double>(d.n_obs());
  CHECK((full - collapsed).norm() / collapsed.norm() < 1e-8);
  CHECK((full - full.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("criterion gradient vanishes at theta*") {
  RngStream rng(29, 0);
  const auto d = test::random_design(rng, 90, 4, 2);
  const MomentModel model(d, CovMode::Plain);
  const Eigen::VectorXd mbar =
      moment_matrix(d, model.theta_star()).colwise().mean().transpose();
  const Eigen::VectorXd grad = model.g_hat().transpose() * (model.weighting() * mbar);
  CHECK(grad.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("G_hat is the Kronecker block Jacobian") {
  RngStream rng(30, 0);
  const auto d = test::random_design(rng, 60, 2, 1);
  const MomentModel model(d, CovMode::Plain);
  const Eigen::MatrixXd gb = -(d.Z.transpose() * d.X) / static_cast<double>(d.n_obs());
  CHECK((model.g_hat().block(0, 0, 2, 2) - gb).cwiseAbs().maxCoeff() == 0.0);
  CHECK((model.g_hat().block(2, 2, 2, 2) - gb).cwiseAbs().maxCoeff() == 0.0);
  CHECK(model.g_hat().block(0, 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);
  // m_bar(theta*) is zero to 1e-10 (exact identification)
  const Eigen::MatrixXd m = moment_matrix(d, model.theta_star());
  CHECK(m.colwise().mean().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ill-conditioned cross moments are rejected") {
  RngStream rng(31, 0);
  auto d = test::random_design(rng, 50, 3, 1);
  d.X.col(2) = 2.0 * d.X.col(1);  // collinear regressors
  d.Z = d.X;
  CHECK_THROWS_AS(initial_iv_estimate(d), NumericError);
}

TEST_CASE("jitter ladder recovers near-singular matrices and reports failure") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a.diagonal() << 1.0, 1.0, 0.0;  // singular PSD
  double jitter = -1.0;
  CHECK_NOTHROW(chol_with_jitter(a, &jitter));
  CHECK(jitter > 0.0);
  Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(chol_with_jitter(neg), NumericError);
}

}  // TEST_SUITE
