#include "lpqb/linalg.hpp"

#include <array>

#include "lpqb/errors.hpp"

namespace lpqb {

Eigen::LLT<Eigen::MatrixXd> chol_with_jitter(const Eigen::MatrixXd& a, double* jitter_used) {
  const auto n = a.rows();
  const double scale = a.trace() / static_cast<double>(n);
  const std::array<double, 4> ladder = {0.0, 1e-10 * scale, 1e-8 * scale, 1e-6 * scale};
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (double jitter : ladder) {
    if (jitter == 0.0) {
      llt.compute(a);
    } else {
      llt.compute(a + jitter * Eigen::MatrixXd::Identity(n, n));
    }
    if (llt.info() == Eigen::Success) {
      if (jitter_used) *jitter_used = jitter;
      return llt;
    }
  }
  throw NumericError("cholesky: matrix not positive definite after jitter ladder");
}

Eigen::MatrixXd invert_spd(const Eigen::MatrixXd& a) {
  const auto llt = chol_with_jitter(a);
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  return symmetrize(inv);
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

}  // namespace lpqb
