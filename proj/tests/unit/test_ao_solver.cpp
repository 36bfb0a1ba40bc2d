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

#include <catch2/catch_amalgamated.hpp>

#include "rismse/ao_solver.hpp"
#include "rismse/error.hpp"
#include "rismse/mse_objective.hpp"
#include "test_instances.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace rismse;
using namespace rismse::testing;

namespace
{

void check_nonincreasing(const std::vector<double> &trace, double slack = 1e-9)
{
    for (std::size_t k = 1; k < trace.size(); ++k)
        CHECK(trace[k] <= trace[k - 1] + slack);
}

SolveOptions options_with_seed(std::uint64_t seed)
{
    SolveOptions o;
    o.seed = seed;
    return o;
}

} // namespace

TEST_CASE("Scheme names round-trip")
{
    for (Scheme s : kAllSchemes)
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("optimal"), DomainError);
}

TEST_CASE("SolveOptions - validation")
{
    SolveOptions o;
    CHECK_NOTHROW(o.validate());
    o.epsilon = 0.0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = SolveOptions{};
    o.max_outer_iters = 0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = SolveOptions{};
    o.inner_mm_max_iters = 0;
    CHECK_THROWS_AS(o.validate(), DomainError);
}

TEST_CASE("solve - monotone trace, feasibility and determinism")
{
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 30; ++rep)
    {
        const Instance in = random_instance(rng, InstanceLimits{8, 4, 24, true});
        const SolveTrace a = solve(in.channels, in.config, options_with_seed(100 + rep));
        const SolveTrace b = solve(in.channels, in.config, options_with_seed(100 + rep));
        INFO("instance " << rep);
        check_nonincreasing(a.mse_per_iteration);
        CHECK(a.final_state.feasible(in.config));
        CHECK(a.mse_per_iteration == b.mse_per_iteration);
        CHECK(a.final_state.phases == b.final_state.phases);
        CHECK(a.iterations_used == int(a.mse_per_iteration.size()));
        CHECK(a.final_mse == a.mse_per_iteration.back());
        CHECK(std::abs(a.final_mse - analytic_mse(a.final_state, in.channels, in.config).total) <= 1e-12 * a.final_mse);
    }
}

TEST_CASE("solve - every sub-update is a descent step and stays feasible")
{
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep)
    {
        const Instance in = random_instance(rng, InstanceLimits{8, 4, 24, true});
        std::vector<double> seq;
        bool all_feasible = true;
        SolveOptions o = options_with_seed(rep);
        o.observer = [&](int, SubUpdate, const TransceiverState &st, double mse) {
            seq.push_back(mse);
            all_feasible = all_feasible && st.feasible(in.config);
        };
        solve(in.channels, in.config, o);
        check_nonincreasing(seq);
        CHECK(all_feasible);
    }
}

TEST_CASE("solve - stopping rule fires on unit-scale instances")
{
    std::mt19937_64 rng(3);
    int converged = 0, within_100 = 0;
    const int n = 30;
    for (int rep = 0; rep < n; ++rep)
    {
        const Instance in = random_instance(rng, InstanceLimits{8, 4, 16, true});
        SolveOptions o = options_with_seed(rep);
        o.max_outer_iters = 20000;
        const SolveTrace t = solve(in.channels, in.config, o);
        converged += t.converged;
        within_100 += t.converged && t.iterations_used <= 100;
        if (t.converged)
        {
            const auto k = t.mse_per_iteration.size();
            CHECK(std::abs(t.mse_per_iteration[k - 1] - t.mse_per_iteration[k - 2]) < o.epsilon);
        }
    }
    CHECK(converged == n);
    WARN(within_100 << "/" << n << " converged within 100 outer iterations");
}

TEST_CASE("solve - classical MMSE reduction without the reflected path")
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 10; ++rep)
    {
        Instance in = random_instance(rng, InstanceLimits{6, 4, 6, false});
        in.channels.h_r.setZero();
        SolveOptions o = options_with_seed(rep);
        o.epsilon = 1e-13;
        o.max_outer_iters = 20000;
        const SolveTrace t = solve(in.channels, in.config, o);
        const CMat h = in.channels.h_d.adjoint();
        const double wf = waterfilling_mmse(h, in.config.noise_power, in.config.power_budget, in.config.d);
        const double alt = classical_mmse_alternating(h, in.config.noise_power, in.config.power_budget,
                                                      complex_gaussian(in.config.n_t, in.config.d, rng));
        INFO("instance " << rep << " solver " << t.final_mse << " alternating " << alt << " waterfilling " << wf);
        CHECK(std::abs(t.final_mse - alt) <= 1e-6 * alt);
        CHECK(std::abs(t.final_mse - wf) <= 1e-6 * wf);
    }
}

TEST_CASE("solve - errors carry the outer iteration")
{
    std::mt19937_64 rng(5);
    const Instance in = random_instance(rng);
    SolveOptions o;
    o.observer = [](int it, SubUpdate what, const TransceiverState &, double) {
        if (it == 3 && what == SubUpdate::precoder)
            throw std::runtime_error("injected");
    };
    try
    {
        solve(in.channels, in.config, o);
        FAIL("expected SolverError");
    }
    catch (const SolverError &e)
    {
        CHECK(std::string(e.what()).find("outer iteration 3") != std::string::npos);
        CHECK(std::string(e.what()).find("injected") != std::string::npos);
    }

    ChannelSet bad = in.channels;
    bad.h_t.conservativeResize(bad.h_t.rows() + 1, Eigen::NoChange);
    CHECK_THROWS_AS(solve(bad, in.config, SolveOptions{}), ShapeError);
}

TEST_CASE("solve - random initializations all converge")
{
    std::mt19937_64 rng(6);
    SystemConfig cfg;
    const Instance in = scenario_instance(rng, cfg);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        SolveOptions o = options_with_seed(seed);
        o.max_outer_iters = 1000;
        const SolveTrace t = solve(in.channels, cfg, o);
        converged += t.converged;
        lo = std::min(lo, t.final_mse);
        hi = std::max(hi, t.final_mse);
    }
    CHECK(converged == 10);
    WARN("final MSE spread over 10 initializations: [" << lo << ", " << hi << "]");
}

TEST_CASE("solve_baseline - naive and ideal coincide on ideal hardware")
{
    std::mt19937_64 rng(7);
    const Instance in = random_instance(rng, InstanceLimits{8, 4, 16, false});
    const SolveTrace naive = solve_baseline(Scheme::naive, in.channels, in.config, options_with_seed(3));
    const SolveTrace ideal = solve_baseline(Scheme::ideal_hw, in.channels, in.config, options_with_seed(3));
    CHECK(naive.final_mse == ideal.final_mse);
    CHECK(naive.scheme == Scheme::naive);
    CHECK(ideal.scheme == Scheme::ideal_hw);
}

TEST_CASE("solve_baseline - scheme semantics")
{
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 10; ++rep)
    {
        const Instance in = random_instance(rng, InstanceLimits{8, 4, 16, true});
        const SolveOptions o = options_with_seed(rep);

        const SolveTrace no_ris = solve_baseline(Scheme::no_ris, in.channels, in.config, o);
        check_nonincreasing(no_ris.mse_per_iteration);
        CHECK(no_ris.final_state.phases == CVec::Ones(in.config.m));
        ChannelSet direct = in.channels;
        direct.h_r.setZero();
        CHECK(no_ris.final_mse == Catch::Approx(analytic_mse(no_ris.final_state, direct, in.config).total));

        const SolveTrace rnd = solve_baseline(Scheme::random_phase, in.channels, in.config, o);
        check_nonincreasing(rnd.mse_per_iteration);
        CHECK((rnd.final_state.phases.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
        CHECK(rnd.final_state.phases == solve_baseline(Scheme::random_phase, in.channels, in.config, o)
                                           .final_state.phases);

        // the naive design is feasible on the real system and scored there
        const SolveTrace naive = solve_baseline(Scheme::naive, in.channels, in.config, o);
        CHECK(naive.final_state.feasible(in.config));
        CHECK(naive.final_mse == analytic_mse(naive.final_state, in.channels, in.config).total);

        const SolveTrace prop = solve_baseline(Scheme::proposed, in.channels, in.config, o);
        CHECK(prop.mse_per_iteration == solve(in.channels, in.config, o).mse_per_iteration);
    }
}

TEST_CASE("solve_baseline - ideal hardware ignores the impairment levels")
{
    std::mt19937_64 rng(9);
    Instance in = random_instance(rng, InstanceLimits{8, 4, 16, true});
    const double first = solve_baseline(Scheme::ideal_hw, in.channels, in.config, options_with_seed(1)).final_mse;
    for (double ks : {0.0, 0.05, 0.2})
    {
        in.config.impairments = ImpairmentParams::make(ks, 0.1, 7.0);
        CHECK(solve_baseline(Scheme::ideal_hw, in.channels, in.config, options_with_seed(1)).final_mse == first);
    }
}
