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

#ifndef RISMSE_PHASE_OPT_HPP
#define RISMSE_PHASE_OPT_HPP

#include "rismse/math_kernels.hpp"
#include "rismse/mse_objective.hpp"

#include <vector>

namespace rismse
{

/// Majorization-minimization for
///
///     min_theta  f(theta) = theta^H xi theta + 2 rho Re{theta^H q}   s.t. |theta_m| = 1.
///
/// With Lambda = lambda_max(xi) I, the surrogate
///
///     g(theta | theta_t) = theta^H Lambda theta + 2 Re{theta^H (xi - Lambda) theta_t}
///                        + theta_t^H (Lambda - xi) theta_t + 2 rho Re{theta^H q}
///
/// upper-bounds f and touches it at theta_t. On the unit-modulus set theta^H Lambda theta is
/// the constant lambda_max * M, so minimizing g means maximizing 2 Re{theta^H u} with
/// u = -(xi - lambda_max I) theta_t - rho q, solved elementwise by theta_m = u_m / |u_m|.

/// Iteration state of the MM loop.
struct MmState
{
    CVec theta;
    double lambda_max = 0.0;
    CVec u_vector;
    double objective = 0.0;
    int iteration = 0;
};

/// g(theta | theta_t) as above.
double surrogate_value(const CVec &theta, const CVec &theta_t, const PhaseQuadratic &quad, double lambda_max,
                       double rho);

/// One MM update. Entries with u_m == 0 keep the phase of theta_t.
CVec mm_step(const CVec &theta_t, const PhaseQuadratic &quad, double lambda_max, double rho);

struct PhaseSolution
{
    CVec theta;
    std::vector<double> objective_trace; // f(theta_0), f(theta_1), ...
    bool converged = false;
    int iterations = 0;
};

struct MmOptions
{
    int max_iters = 500;
    double rel_tol = 1e-8;
};

/// Iterates mm_step from theta_0 until |f_t - f_{t-1}| <= rel_tol (1 + |f_t|) or max_iters.
/// Throws DomainError when max_iters < 1.
PhaseSolution optimize_phases(const CVec &theta_0, const PhaseQuadratic &quad, double rho,
                              const MmOptions &options = {});

// theta_m / |theta_m|, mapping zeros to 1
CVec project_unit_modulus(const CVec &theta);

} // namespace rismse

#endif
