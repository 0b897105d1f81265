#pragma once

#include <Eigen/Dense>

namespace lpqb {

/// Cholesky factor of a symmetric positive (semi)definite matrix with an
/// escalating diagonal jitter ladder: no jitter first, then
/// {1e-10, 1e-8, 1e-6} * trace(A)/n. Throws NumericError if every rung fails.
/// If jitter_used is non-null it receives the jitter that succeeded.
Eigen::LLT<Eigen::MatrixXd> chol_with_jitter(const Eigen::MatrixXd& a,
                                             double* jitter_used = nullptr);

/// Inverse of a symmetric positive definite matrix via chol_with_jitter;
/// result is exactly symmetric.
Eigen::MatrixXd invert_spd(const Eigen::MatrixXd& a);

/// (A + A') / 2.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a);

}  // namespace lpqb
