#include <benchmark/benchmark.h>

#include "lpqb/sampler.hpp"
#include "lpqb/simulate.hpp"

namespace {

using namespace lpqb;

// One design per (T, L) so setup cost stays out of the loop.
struct SamplerFixture {
  LpDesign design;
  MomentModel model;
  Eigen::MatrixXd q;
  Eigen::MatrixXd pi;

  SamplerFixture(Eigen::Index t_count, int lags, int horizon)
      : design(make_design(t_count, lags, horizon)), model(design, CovMode::Plain) {
    q = smoothing_precision(horizon, 4.0);
    pi = stacked_prior_precision(q, Eigen::VectorXd::Ones(design.n_cols()));
  }

  static LpDesign make_design(Eigen::Index t_count, int lags, int horizon) {
    DgpParams params;
    params.n_obs = t_count + lags + horizon + 1;
    RngStream rng(99, 0);
    const Dataset data = generate_dgp(params, rng);
    SpecConfig spec;
    spec.kind = SpecKind::LongDifference;
    spec.horizon = horizon;
    spec.lags = lags;
    spec.n_fourier = 0;
    spec.day_of_week = false;
    return build_design(data, spec);
  }
};

void BM_DrawCoefficients(benchmark::State& state) {
  const SamplerFixture fx(500, static_cast<int>(state.range(0)), 7);
  RngStream rng(7, 1);
  for (auto _ : state) {
    auto draw = draw_coefficients(fx.model.upsilon(), fx.pi, fx.model.theta_star(), rng);
    benchmark::DoNotOptimize(draw.data());
  }
  state.counters["K"] = static_cast<double>(fx.design.stacked_dim());
}
BENCHMARK(BM_DrawCoefficients)->Arg(2)->Arg(10)->Arg(25);

void BM_GibbsIteration(benchmark::State& state) {
  const SamplerFixture fx(500, static_cast<int>(state.range(0)), 7);
  McmcConfig cfg;
  cfg.n_draws = 200;
  cfg.n_burn = 0;
  for (auto _ : state) {
    const Chain chain = run_gibbs(fx.model, cfg);
    benchmark::DoNotOptimize(chain.theta.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_draws);
  state.counters["K"] = static_cast<double>(fx.design.stacked_dim());
}
BENCHMARK(BM_GibbsIteration)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
