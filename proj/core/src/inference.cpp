#include "lpqb/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "lpqb/errors.hpp"
#include "lpqb/linalg.hpp"
#include "lpqb/parallel.hpp"
#include "lpqb/rng.hpp"
#include "lpqb/stats.hpp"

namespace lpqb {

void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int n_threads = static_cast<int>(std::min<long>(workers, n));
  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<Interval> pointwise_intervals(const Eigen::VectorXd& theta_hat,
                                          const Eigen::MatrixXd& v, double level,
                                          const std::vector<int>& coords) {
  if (!(level > 0.0 && level < 1.0))
    throw ConfigError("pointwise_intervals: level must lie in (0, 1)");
  const double z = normal_quantile(0.5 * (1.0 + level));
  // Negative beyond roundoff scale signals a broken covariance; tiny
  // negatives from the jittered sandwich are clamped to zero.
  const double tol = 1e-10 * std::max(1.0, v.diagonal().cwiseAbs().maxCoeff());
  std::vector<Interval> out;
  out.reserve(coords.size());
  for (int k : coords) {
    const double var = v(k, k);
    if (var < -tol)
      throw NumericError("pointwise_intervals: negative variance at coordinate " +
                         std::to_string(k));
    const double se = std::sqrt(std::max(var, 0.0));
    out.push_back({theta_hat[k] - z * se, theta_hat[k] + z * se});
  }
  return out;
}

SupTBand sup_t_band(const Eigen::VectorXd& estimates, const Eigen::MatrixXd& cov, double level,
                    long n_sim, std::uint64_t seed, int workers) {
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("sup_t_band: level must lie in (0, 1)");
  if (n_sim < 1) throw ConfigError("sup_t_band: n_sim must be positive");
  const auto m = estimates.size();
  if (cov.rows() != m || cov.cols() != m)
    throw DataError("sup_t_band: covariance dimension mismatch");

  const double z = normal_quantile(0.5 * (1.0 + level));
  const double tol = 1e-10 * std::max(1.0, cov.diagonal().cwiseAbs().maxCoeff());

  SupTBand result;
  result.band.resize(static_cast<std::size_t>(m));
  Eigen::VectorXd se(m);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double var = cov(i, i);
    if (var < -tol)
      throw NumericError("sup_t_band: negative variance at coordinate " + std::to_string(i));
    se[i] = std::sqrt(std::max(var, 0.0));
    if (se[i] > 0.0) kept.push_back(i);
  }
  result.n_dropped = static_cast<int>(m) - static_cast<int>(kept.size());

  // Degenerate coordinates leave the max statistic; with none left the band
  // collapses to the pointwise quantile.
  double crit = z;
  if (!kept.empty()) {
    const auto mk = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd corr(mk, mk);
    for (Eigen::Index a = 0; a < mk; ++a)
      for (Eigen::Index b = 0; b < mk; ++b)
        corr(a, b) = cov(kept[a], kept[b]) / (se[kept[a]] * se[kept[b]]);
    corr = symmetrize(corr);
    corr.diagonal().setOnes();
    const Eigen::MatrixXd chol_l = chol_with_jitter(corr).matrixL();

    constexpr long kBlock = 8192;
    const long n_blocks = (n_sim + kBlock - 1) / kBlock;
    std::vector<double> stats(static_cast<std::size_t>(n_sim));
    parallel_for(n_blocks, workers, [&](long block) {
      RngStream rng(mix_key(seed, 0x73757074ULL, static_cast<std::uint64_t>(block)));
      const long lo = block * kBlock;
      const long hi = std::min(n_sim, lo + kBlock);
      Eigen::VectorXd g(mk);
      for (long i = lo; i < hi; ++i) {
        for (Eigen::Index a = 0; a < mk; ++a) g[a] = rng.normal();
        stats[static_cast<std::size_t>(i)] =
            (chol_l.triangularView<Eigen::Lower>() * g).cwiseAbs().maxCoeff();
      }
    });
    long idx = static_cast<long>(std::ceil(level * static_cast<double>(n_sim))) - 1;
    idx = std::clamp<long>(idx, 0, n_sim - 1);
    std::nth_element(stats.begin(), stats.begin() + idx, stats.end());
    // The max-t critical value dominates the pointwise quantile; the floor
    // only absorbs simulation error in degenerate cases.
    crit = std::max(stats[static_cast<std::size_t>(idx)], z);
  }

  result.critical_value = crit;
  for (Eigen::Index i = 0; i < m; ++i)
    result.band[static_cast<std::size_t>(i)] = {estimates[i] - crit * se[i],
                                                estimates[i] + crit * se[i]};
  return result;
}

IrfResult extract_irf(const Eigen::VectorXd& theta_hat, const Eigen::MatrixXd& v,
                      const LpDesign& design, double level, long n_sim, std::uint64_t seed,
                      int workers) {
  const int k = design.stacked_dim();
  if (theta_hat.size() != k || v.rows() != k || v.cols() != k)
    throw DataError("extract_irf: dimension mismatch with the design");

  IrfResult out;
  out.level = level;
  out.pointwise_z = normal_quantile(0.5 * (1.0 + level));
  const int n_h = design.horizon + 1;

  for (int m = 0; m < design.n_treatments(); ++m) {
    std::vector<int> coords(static_cast<std::size_t>(n_h));
    for (int h = 0; h < n_h; ++h) coords[static_cast<std::size_t>(h)] = design.stacked_index(h, m);

    Eigen::VectorXd est(n_h);
    Eigen::MatrixXd sub(n_h, n_h);
    for (int a = 0; a < n_h; ++a) {
      est[a] = theta_hat[coords[static_cast<std::size_t>(a)]];
      for (int b = 0; b < n_h; ++b)
        sub(a, b) = v(coords[static_cast<std::size_t>(a)], coords[static_cast<std::size_t>(b)]);
    }
    const auto intervals = pointwise_intervals(theta_hat, v, level, coords);
    const auto band =
        sup_t_band(est, sub, level, n_sim, mix_key(seed, 0x69726626ULL, m), workers);
    const std::string& name = design.treatment_names[static_cast<std::size_t>(m)];
    if (band.n_dropped > 0)
      out.warnings.push_back("sup_t_band(" + name + "): " + std::to_string(band.n_dropped) +
                             " zero-variance coordinate(s) excluded from the max statistic");
    out.critical_values[name] = band.critical_value;
    for (int h = 0; h < n_h; ++h) {
      IrfRow row;
      row.treatment = name;
      row.horizon = design.y_offsets[static_cast<std::size_t>(h)];
      row.estimate = est[h];
      row.se = std::sqrt(std::max(sub(h, h), 0.0));
      row.ci_lo = intervals[static_cast<std::size_t>(h)].lo;
      row.ci_hi = intervals[static_cast<std::size_t>(h)].hi;
      row.band_lo = band.band[static_cast<std::size_t>(h)].lo;
      row.band_hi = band.band[static_cast<std::size_t>(h)].hi;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace lpqb
