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

#ifndef RISMSE_AO_SOLVER_HPP
#define RISMSE_AO_SOLVER_HPP

#include "rismse/channel_model.hpp"
#include "rismse/system_config.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rismse
{

/// Designs compared in the experiments.
///   proposed      joint C / W / theta design on the impaired model
///   ideal_hw      joint design and evaluation with ideal transceivers and RIS
///   no_ris        C / W design on the impaired link without the RIS path
///   random_phase  C / W design with theta drawn once and held fixed
///   naive         ideal-hardware design evaluated on the impaired model
enum class Scheme
{
    proposed,
    ideal_hw,
    no_ris,
    random_phase,
    naive,
};

std::string_view to_string(Scheme scheme);

// Throws DomainError for an unknown name
Scheme parse_scheme(std::string_view name);

inline constexpr Scheme kAllSchemes[] = {Scheme::proposed, Scheme::ideal_hw, Scheme::no_ris, Scheme::random_phase,
                                         Scheme::naive};

enum class SubUpdate
{
    equalizer,
    precoder,
    phases,
};

/// Called after every sub-update with the current state and its analytic MSE (design model).
using SubUpdateObserver = std::function<void(int outer_iteration, SubUpdate, const TransceiverState &, double)>;

struct SolveOptions
{
    int max_outer_iters = 100;
    double epsilon = 1e-5; // stop when consecutive outer MSE values differ by less than this
    double inner_mm_tol = 1e-8;
    int inner_mm_max_iters = 500;
    double bisection_tol = 1e-9;
    std::uint64_t seed = 1;
    SubUpdateObserver observer; // optional instrumentation

    void validate() const;
};

struct SolveTrace
{
    std::vector<double> mse_per_iteration; // analytic MSE of the design model after each outer iteration
    TransceiverState final_state;
    bool converged = false;
    int iterations_used = 0;
    Scheme scheme = Scheme::proposed;
    double final_mse = 0.0; // MSE of final_state under the scheme's evaluation model
};

/// Alternating optimization C -> W -> theta.
///
/// theta starts uniformly on the unit circle and W with i.i.d. Gaussian entries scaled so
/// (1 + ks) tr{WW^H} = tau, both drawn from `options.seed`. Each outer iteration updates the
/// equalizer, the precoder, then the phases (MM on a freshly built quadratic form), and
/// records the analytic MSE after the phase update. Subproblem failures propagate as
/// SolverError carrying the outer iteration.
SolveTrace solve(const ChannelSet &channels, const SystemConfig &config, const SolveOptions &options);

/// Comparison schemes; Scheme::proposed forwards to solve().
SolveTrace solve_baseline(Scheme scheme, const ChannelSet &channels, const SystemConfig &config,
                          const SolveOptions &options);

} // namespace rismse

#endif
