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

#include "rismse/error.hpp"
#include "rismse/phase_opt.hpp"
#include "test_instances.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace rismse;
using namespace rismse::testing;

namespace
{

PhaseQuadratic random_quadratic(int m, std::mt19937_64 &rng)
{
    const CMat b = complex_gaussian(m, m, rng);
    PhaseQuadratic q;
    q.xi = b * b.adjoint();
    q.q = complex_gaussian(m, 1, rng);
    return q;
}

// Quadratics built from an actual transceiver state
PhaseQuadratic state_quadratic(std::mt19937_64 &rng, int max_m, double *rho)
{
    const Instance in = random_instance(rng, InstanceLimits{8, 4, max_m, true});
    *rho = in.config.rho();
    return build_phase_quadratic(in.state.precoder, in.state.equalizer, in.channels, in.config);
}

double deg(int k)
{
    return k * std::numbers::pi / 180.0;
}

} // namespace

TEST_CASE("surrogate_value - tightness and majorization")
{
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 100; ++rep)
    {
        double rho = 0.0;
        const PhaseQuadratic q = rep % 2 ? random_quadratic(6, rng) : state_quadratic(rng, 12, &rho);
        if (rep % 2)
            rho = 0.8;
        const Eigen::Index m = q.xi.rows();
        const double lmax = max_eigenvalue(q.xi);
        const CVec tt = random_unit_phases(m, rng);
        const CVec th = random_unit_phases(m, rng);
        const double f_t = phase_objective(q, tt, rho);
        CHECK(std::abs(surrogate_value(tt, tt, q, lmax, rho) - f_t) <= 1e-10 * (1.0 + std::abs(f_t)));
        const double f = phase_objective(q, th, rho);
        CHECK(surrogate_value(th, tt, q, lmax, rho) >= f - 1e-9 * (1.0 + std::abs(f)));
        // theta^H Lambda theta = lambda_max M on the unit-modulus set
        CHECK(std::abs(lmax * th.squaredNorm() - lmax * double(m)) <= 1e-12 * lmax * double(m));
    }
}

TEST_CASE("surrogate_value - scaled identity is exact")
{
    std::mt19937_64 rng(2);
    PhaseQuadratic q;
    q.xi = 3.5 * CMat::Identity(5, 5);
    q.q = complex_gaussian(5, 1, rng);
    for (int k = 0; k < 20; ++k)
    {
        const CVec a = random_unit_phases(5, rng), b = random_unit_phases(5, rng);
        CHECK(std::abs(surrogate_value(a, b, q, 3.5, 0.7) - phase_objective(q, a, 0.7)) < 1e-12);
    }
}

TEST_CASE("mm_step - fixed point with zero drive")
{
    std::mt19937_64 rng(3);
    PhaseQuadratic q;
    q.xi = 2.0 * CMat::Identity(4, 4);
    q.q = CVec::Zero(4);
    const CVec th = random_unit_phases(4, rng);
    CHECK(mm_step(th, q, 2.0, 0.9) == th);
}

TEST_CASE("mm_step - single element grid oracle")
{
    // f = 2 - 2 cos(arg theta) is minimized at theta = 1
    PhaseQuadratic q;
    q.xi = CMat::Constant(1, 1, 2.0);
    q.q = CVec::Constant(1, -1.0);
    int best = 0;
    for (int k = 0; k < 360; ++k)
        if (phase_objective(q, CVec::Constant(1, std::polar(1.0, deg(k))), 1.0) <
            phase_objective(q, CVec::Constant(1, std::polar(1.0, deg(best))), 1.0))
            best = k;
    CHECK(best == 0);
    const CVec next = mm_step(CVec::Constant(1, std::polar(1.0, 2.0)), q, 2.0, 1.0);
    CHECK(std::abs(next(0) - 1.0) < 1e-14);
}

TEST_CASE("mm_step - descent chain on every iteration")
{
    std::mt19937_64 rng(4);
    for (int run = 0; run < 100; ++run)
    {
        double rho = 0.0;
        const PhaseQuadratic q = state_quadratic(rng, 24, &rho);
        const double lmax = max_eigenvalue(q.xi);
        CVec th = random_unit_phases(q.xi.rows(), rng);
        for (int it = 0; it < 30; ++it)
        {
            const CVec next = mm_step(th, q, lmax, rho);
            const double f_next = phase_objective(q, next, rho);
            const double g_next = surrogate_value(next, th, q, lmax, rho);
            const double g_here = surrogate_value(th, th, q, lmax, rho);
            const double f_here = phase_objective(q, th, rho);
            const double slack = 1e-9 * (1.0 + std::abs(f_here));
            CHECK(f_next <= g_next + slack);
            CHECK(g_next <= g_here + slack);
            CHECK(std::abs(g_here - f_here) <= slack);
            CHECK((next.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
            th = next;
        }
    }
}

TEST_CASE("optimize_phases - diagonal xi without linear term")
{
    std::mt19937_64 rng(5);
    PhaseQuadratic q;
    q.xi = CMat::Zero(5, 5);
    q.xi.diagonal() << 1.0, 2.0, 0.5, 3.0, 1.5;
    q.q = CVec::Zero(5);
    const PhaseSolution sol = optimize_phases(random_unit_phases(5, rng), q, 0.9);
    CHECK(sol.converged);
    CHECK(sol.iterations <= 2);
    CHECK(std::abs(sol.objective_trace.back() - 8.0) < 1e-12);
}

TEST_CASE("optimize_phases - monotone trace and unit modulus")
{
    std::mt19937_64 rng(6);
    for (int run = 0; run < 50; ++run)
    {
        double rho = 0.0;
        const PhaseQuadratic q = state_quadratic(rng, 32, &rho);
        const CVec th0 = random_unit_phases(q.xi.rows(), rng);
        const PhaseSolution sol = optimize_phases(th0, q, rho);
        CHECK(sol.objective_trace.front() == phase_objective(q, th0, rho));
        for (std::size_t k = 1; k < sol.objective_trace.size(); ++k)
            CHECK(sol.objective_trace[k] <= sol.objective_trace[k - 1]);
        CHECK(phase_objective(q, sol.theta, rho) <= phase_objective(q, th0, rho));
        CHECK((sol.theta.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(optimize_phases(CVec::Ones(2), random_quadratic(2, rng), 0.5, MmOptions{0, 1e-8}), DomainError);
}

TEST_CASE("optimize_phases - single element matches grid minimum")
{
    std::mt19937_64 rng(7);
    for (int run = 0; run < 20; ++run)
    {
        double rho = 0.0;
        const PhaseQuadratic q = state_quadratic(rng, 1, &rho);
        REQUIRE(q.xi.rows() == 1);
        double grid_min = std::numeric_limits<double>::infinity();
        int best = 0;
        for (int k = 0; k < 360; ++k)
        {
            const double f = phase_objective(q, CVec::Constant(1, std::polar(1.0, deg(k))), rho);
            if (f < grid_min)
            {
                grid_min = f;
                best = k;
            }
        }
        const PhaseSolution sol = optimize_phases(random_unit_phases(1, rng), q, rho);
        const double f = phase_objective(q, sol.theta, rho);
        const double resolution = 2.0 * (q.xi.norm() + rho * q.q.norm()) * deg(1) / 2.0;
        CHECK(f <= grid_min + 1e-12);
        CHECK(f >= grid_min - resolution);
        // angle within one grid step of the grid argmin
        const double gap = std::abs(std::arg(sol.theta(0) * std::polar(1.0, -deg(best))));
        CHECK(gap <= deg(1));
    }
}

TEST_CASE("optimize_phases - two elements: limit points are grid minima")
{
    // MM is a local method: each limit point must be the grid minimum of its neighbourhood,
    // and the best limit over a spread of starting points must reach the global grid minimum.
    std::mt19937_64 rng(8);
    for (int run = 0; run < 20; ++run)
    {
        double rho = 0.0;
        PhaseQuadratic q = state_quadratic(rng, 2, &rho);
        while (q.xi.rows() != 2)
            q = state_quadratic(rng, 2, &rho);
        auto f_at = [&](double a, double b) {
            CVec th(2);
            th << std::polar(1.0, a), std::polar(1.0, b);
            return phase_objective(q, th, rho);
        };

        double grid_min = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 360; ++a)
            for (int b = 0; b < 360; ++b)
                grid_min = std::min(grid_min, f_at(deg(a), deg(b)));

        // grid error bound: |grad f| * half-step diagonal
        const double lip = 2.0 * (q.xi.norm() * std::sqrt(2.0) + rho * q.q.norm());
        const double resolution = lip * deg(1) * std::sqrt(2.0) / 2.0;

        double best = std::numeric_limits<double>::infinity();
        for (int sa = 0; sa < 4; ++sa)
            for (int sb = 0; sb < 4; ++sb)
            {
                CVec th0(2);
                th0 << std::polar(1.0, deg(90 * sa)), std::polar(1.0, deg(90 * sb));
                const PhaseSolution sol = optimize_phases(th0, q, rho, MmOptions{5000, 1e-14});
                const double f = phase_objective(q, sol.theta, rho);
                const double a0 = std::arg(sol.theta(0)), b0 = std::arg(sol.theta(1));
                double window_min = std::numeric_limits<double>::infinity();
                for (int da = -10; da <= 10; ++da)
                    for (int db = -10; db <= 10; ++db)
                        window_min = std::min(window_min, f_at(a0 + deg(da), b0 + deg(db)));
                INFO("run " << run << " start " << sa << "," << sb << " f " << f << " window " << window_min);
                CHECK(f <= window_min + 1e-12);
                best = std::min(best, f);
            }
        INFO("run " << run << " best " << best << " grid " << grid_min << " resolution " << resolution);
        CHECK(best <= grid_min + 1e-12);
        CHECK(best >= grid_min - resolution);
    }
}

TEST_CASE("project_unit_modulus")
{
    CVec v(3);
    v << cdouble(3, 4), 0.0, cdouble(0, -2);
    const CVec p = project_unit_modulus(v);
    CHECK(std::abs(p(0) - cdouble(0.6, 0.8)) < 1e-15);
    CHECK(p(1) == cdouble(1, 0));
    CHECK(std::abs(p(2) - cdouble(0, -1)) < 1e-15);
}
