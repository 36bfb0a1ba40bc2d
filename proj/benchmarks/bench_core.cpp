// SPDX-License-Identifier: Apache-2.0
//
// rismse: MSE transceiver design for RIS-aided MIMO links with hardware impairments
// Copyright (C) 2026 The rismse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rismse/ao_solver.hpp"
#include "rismse/channel_model.hpp"
#include "rismse/mse_objective.hpp"
#include "rismse/phase_opt.hpp"
#include "rismse/transceiver_opt.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace rismse;

namespace
{

struct Setup
{
    SystemConfig config;
    ChannelSet channels;
    TransceiverState state;
};

Setup make_setup(int m)
{
    Setup s;
    s.config.m = m;
    std::mt19937_64 rng(42);
    s.channels = generate_scenario(s.config, ScenarioGeometry{}, FadingParams{}, rng);
    CMat w = complex_gaussian(s.config.n_t, s.config.d, rng);
    s.state.precoder = std::sqrt(s.config.power_budget / ((1.0 + s.config.kappa_s()) * w.squaredNorm())) * w;
    s.state.phases.resize(m);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < m; ++i)
        s.state.phases(i) = std::polar(1.0, angle(rng));
    s.state.equalizer = update_equalizer(s.state.precoder, s.state.phases, s.channels, s.config);
    return s;
}

void BM_AnalyticMse(benchmark::State &state)
{
    const Setup s = make_setup(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(analytic_mse(s.state, s.channels, s.config).total);
}
BENCHMARK(BM_AnalyticMse)->Arg(20)->Arg(40)->Arg(70);

void BM_BuildPhaseQuadratic(benchmark::State &state)
{
    const Setup s = make_setup(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_phase_quadratic(s.state.precoder, s.state.equalizer, s.channels, s.config));
}
BENCHMARK(BM_BuildPhaseQuadratic)->Arg(20)->Arg(40)->Arg(70);

void BM_OptimizePhases(benchmark::State &state)
{
    const Setup s = make_setup(int(state.range(0)));
    const PhaseQuadratic q = build_phase_quadratic(s.state.precoder, s.state.equalizer, s.channels, s.config);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_phases(s.state.phases, q, s.config.rho()).theta);
}
BENCHMARK(BM_OptimizePhases)->Arg(20)->Arg(40)->Arg(70);

void BM_UpdatePrecoder(benchmark::State &state)
{
    const Setup s = make_setup(40);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            update_precoder(s.state.equalizer, s.state.phases, s.channels, s.config).precoder);
}
BENCHMARK(BM_UpdatePrecoder);

void BM_Solve(benchmark::State &state)
{
    const Setup s = make_setup(int(state.range(0)));
    SolveOptions o;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(s.channels, s.config, o).final_mse);
}
BENCHMARK(BM_Solve)->Arg(20)->Arg(40)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_MonteCarloMse(benchmark::State &state)
{
    const Setup s = make_setup(40);
    std::mt19937_64 rng(7);
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_mse(s.state, s.channels, s.config, 1000, rng).estimate);
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_MonteCarloMse)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
