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

#include "rismse/phase_opt.hpp"
#include "rismse/error.hpp"

#include <algorithm>
#include <cmath>

namespace rismse
{

double surrogate_value(const CVec &theta, const CVec &theta_t, const PhaseQuadratic &quad, double lambda_max,
                       double rho)
{
    const CVec xi_t = quad.xi * theta_t;
    const double quad_term = lambda_max * theta.squaredNorm();
    const double linear = 2.0 * (theta.dot(xi_t) - lambda_max * theta.dot(theta_t)).real();
    const double constant = lambda_max * theta_t.squaredNorm() - theta_t.dot(xi_t).real();
    return quad_term + linear + constant + 2.0 * rho * theta.dot(quad.q).real();
}

CVec mm_step(const CVec &theta_t, const PhaseQuadratic &quad, double lambda_max, double rho)
{
    const CVec u = -(quad.xi * theta_t - lambda_max * theta_t) - rho * quad.q;
    CVec next = theta_t;
    for (Eigen::Index m = 0; m < u.size(); ++m)
    {
        const double mag = std::abs(u(m));
        if (mag > 0.0)
            next(m) = u(m) / mag;
    }
    return next;
}

PhaseSolution optimize_phases(const CVec &theta_0, const PhaseQuadratic &quad, double rho, const MmOptions &options)
{
    if (options.max_iters < 1)
        throw DomainError("optimize_phases: max_iters must be >= 1");

    const double lambda_max = max_eigenvalue(quad.xi);

    PhaseSolution out;
    out.theta = theta_0;
    double f_prev = phase_objective(quad, theta_0, rho);
    out.objective_trace.push_back(f_prev);

    for (int it = 0; it < options.max_iters; ++it)
    {
        const CVec next = mm_step(out.theta, quad, lambda_max, rho);
        const double f = phase_objective(quad, next, rho);
        ++out.iterations;

        // roundoff can make a converged step look like a tiny ascent; keep the better iterate
        if (f <= f_prev)
            out.theta = next;
        out.objective_trace.push_back(std::min(f, f_prev));

        if (std::abs(f - f_prev) <= options.rel_tol * (1.0 + std::abs(f)))
        {
            out.converged = true;
            break;
        }
        f_prev = std::min(f, f_prev);
    }
    return out;
}

CVec project_unit_modulus(const CVec &theta)
{
    CVec out(theta.size());
    for (Eigen::Index m = 0; m < theta.size(); ++m)
    {
        const double mag = std::abs(theta(m));
        out(m) = (mag > 0.0) ? theta(m) / mag : cdouble(1.0, 0.0);
    }
    return out;
}

} // namespace rismse
