#include <benchmark/benchmark.h>

#include "lpqb/gmm.hpp"
#include "lpqb/inference.hpp"
#include "lpqb/simulate.hpp"

namespace {

using namespace lpqb;

LpDesign bench_design(Eigen::Index t_count, int lags) {
  DgpParams params;
  params.n_obs = t_count + lags + 8;
  RngStream rng(31, 0);
  const Dataset data = generate_dgp(params, rng);
  SpecConfig spec;
  spec.kind = SpecKind::LongDifference;
  spec.horizon = 7;
  spec.lags = lags;
  spec.n_fourier = 0;
  spec.day_of_week = false;
  return build_design(data, spec);
}

void BM_MomentCovariance(benchmark::State& state) {
  const auto mode = static_cast<CovMode>(state.range(0));
  const LpDesign design = bench_design(1000, 6);
  const Eigen::VectorXd theta = initial_iv_estimate(design);
  for (auto _ : state) {
    auto sigma = moment_covariance(design, theta, mode);
    benchmark::DoNotOptimize(sigma.data());
  }
}
BENCHMARK(BM_MomentCovariance)
    ->Arg(static_cast<int>(CovMode::Plain))
    ->Arg(static_cast<int>(CovMode::BlockDiag))
    ->Arg(static_cast<int>(CovMode::Har))
    ->Unit(benchmark::kMillisecond);

void BM_MomentModelBuild(benchmark::State& state) {
  const LpDesign design = bench_design(state.range(0), 6);
  for (auto _ : state) {
    MomentModel model(design, CovMode::Plain);
    benchmark::DoNotOptimize(model.upsilon().data());
  }
}
BENCHMARK(BM_MomentModelBuild)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SupTBand(benchmark::State& state) {
  const LpDesign design = bench_design(500, 4);
  const MomentModel model(design, CovMode::Plain);
  const Eigen::MatrixXd v = model.inference_covariance(model.theta_star());
  Eigen::VectorXd est(8);
  Eigen::MatrixXd sub(8, 8);
  for (int a = 0; a < 8; ++a) {
    est[a] = model.theta_star()[design.stacked_index(a, 0)];
    for (int b = 0; b < 8; ++b)
      sub(a, b) = v(design.stacked_index(a, 0), design.stacked_index(b, 0));
  }
  for (auto _ : state) {
    auto band = sup_t_band(est, sub, 0.9, state.range(0), 11);
    benchmark::DoNotOptimize(band.critical_value);
  }
}
BENCHMARK(BM_SupTBand)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
