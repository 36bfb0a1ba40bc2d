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
#include "rismse/error.hpp"
#include "rismse/mse_objective.hpp"
#include "rismse/phase_opt.hpp"
#include "rismse/transceiver_opt.hpp"
#include "shape_checks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rismse
{

std::string_view to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::proposed:
        return "proposed";
    case Scheme::ideal_hw:
        return "ideal_hw";
    case Scheme::no_ris:
        return "no_ris";
    case Scheme::random_phase:
        return "random_phase";
    case Scheme::naive:
        return "naive";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : kAllSchemes)
        if (to_string(s) == name)
            return s;
    throw DomainError("unknown scheme '" + std::string(name) + "'");
}

void SolveOptions::validate() const
{
    if (!(epsilon > 0.0))
        throw DomainError("solve options: epsilon must be positive");
    if (max_outer_iters < 1 || inner_mm_max_iters < 1)
        throw DomainError("solve options: iteration caps must be >= 1");
    if (!(inner_mm_tol > 0.0) || !(bisection_tol > 0.0))
        throw DomainError("solve options: tolerances must be positive");
}

namespace
{

CVec random_phases(Eigen::Index m, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    CVec theta(m);
    for (Eigen::Index i = 0; i < m; ++i)
        theta(i) = std::polar(1.0, angle(rng));
    return theta;
}

CMat initial_precoder(const SystemConfig &config, std::mt19937_64 &rng)
{
    CMat w = complex_gaussian(config.n_t, config.d, rng);
    const double scale = std::sqrt(config.power_budget / ((1.0 + config.kappa_s()) * w.squaredNorm()));
    return scale * w;
}

// Core AO loop; phases are only optimized when `update_phases` is set.
SolveTrace alternate(const ChannelSet &channels, const SystemConfig &config, const SolveOptions &options,
                     CVec theta, CMat w, bool update_phases)
{
    SolveTrace trace;
    TransceiverState &st = trace.final_state;
    st.precoder = std::move(w);
    st.phases = std::move(theta);
    st.equalizer = CMat::Zero(config.d, config.n_r);

    const MmOptions mm{options.inner_mm_max_iters, options.inner_mm_tol};
    auto notify = [&](int it, SubUpdate what) {
        if (options.observer)
            options.observer(it, what, st, analytic_mse(st, channels, config).total);
    };

    for (int it = 1; it <= options.max_outer_iters; ++it)
    {
        try
        {
            st.equalizer = update_equalizer(st.precoder, st.phases, channels, config);
            notify(it, SubUpdate::equalizer);

            st.precoder = update_precoder(st.equalizer, st.phases, channels, config, options.bisection_tol).precoder;
            notify(it, SubUpdate::precoder);

            if (update_phases)
            {
                const PhaseQuadratic quad = build_phase_quadratic(st.precoder, st.equalizer, channels, config);
                st.phases = optimize_phases(st.phases, quad, config.rho(), mm).theta;
                notify(it, SubUpdate::phases);
            }
        }
        catch (const std::exception &e)
        {
            throw SolverError("outer iteration " + std::to_string(it) + ": " + e.what());
        }

        const double mse = analytic_mse(st, channels, config).total;
        trace.mse_per_iteration.push_back(mse);
        trace.iterations_used = it;

        const auto n = trace.mse_per_iteration.size();
        if (n >= 2 && std::abs(trace.mse_per_iteration[n - 1] - trace.mse_per_iteration[n - 2]) < options.epsilon)
        {
            trace.converged = true;
            break;
        }
    }
    trace.final_mse = trace.mse_per_iteration.empty() ? 0.0 : trace.mse_per_iteration.back();
    return trace;
}

} // namespace

SolveTrace solve(const ChannelSet &channels, const SystemConfig &config, const SolveOptions &options)
{
    config.validate();
    options.validate();
    detail::check_channels(channels, config, "solve");

    std::mt19937_64 rng(options.seed);
    CVec theta = random_phases(config.m, rng);
    CMat w = initial_precoder(config, rng);
    SolveTrace trace = alternate(channels, config, options, std::move(theta), std::move(w), true);
    trace.scheme = Scheme::proposed;
    return trace;
}

SolveTrace solve_baseline(Scheme scheme, const ChannelSet &channels, const SystemConfig &config,
                          const SolveOptions &options)
{
    config.validate();
    options.validate();
    detail::check_channels(channels, config, "solve_baseline");

    SolveTrace trace;
    switch (scheme)
    {
    case Scheme::proposed:
        return solve(channels, config, options);

    case Scheme::ideal_hw: {
        trace = solve(channels, config.ideal_hardware(), options);
        break;
    }

    case Scheme::no_ris: {
        ChannelSet direct_only = channels;
        direct_only.h_r.setZero();
        std::mt19937_64 rng(options.seed);
        CVec theta = CVec::Ones(config.m);
        CMat w = initial_precoder(config, rng);
        trace = alternate(direct_only, config, options, std::move(theta), std::move(w), false);
        break;
    }

    case Scheme::random_phase: {
        std::mt19937_64 rng(options.seed);
        CVec theta = random_phases(config.m, rng);
        CMat w = initial_precoder(config, rng);
        trace = alternate(channels, config, options, std::move(theta), std::move(w), false);
        break;
    }

    case Scheme::naive: {
        // designed for ideal hardware under the budget the real amplifier leaves for the signal
        SystemConfig design = config.ideal_hardware();
        design.power_budget = config.power_budget / (1.0 + config.kappa_s());
        trace = solve(channels, design, options);
        trace.final_mse = analytic_mse(trace.final_state, channels, config).total;
        break;
    }

    default:
        throw DomainError("solve_baseline: unknown scheme");
    }
    trace.scheme = scheme;
    return trace;
}

} // namespace rismse
