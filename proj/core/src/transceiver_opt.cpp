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

#include "rismse/transceiver_opt.hpp"
#include "rismse/error.hpp"
#include "rismse/mse_objective.hpp"
#include "shape_checks.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace rismse
{

CMat update_equalizer(const CMat &precoder, const CVec &phases, const ChannelSet &channels,
                      const SystemConfig &config)
{
    detail::check_channels(channels, config, "update_equalizer");
    detail::expect_shape(precoder, config.n_t, config.d, "precoder", "update_equalizer");
    detail::check_phases(phases, config, "update_equalizer");

    const CMat k = receive_covariance(precoder, phases, channels, config);
    const CMat hw = effective_channel(channels, phases, config.rho()) * precoder;

    // C^H = K^{-1} H W
    Eigen::LLT<CMat> llt(k);
    CMat c_h;
    if (llt.info() == Eigen::Success)
        c_h = llt.solve(hw);
    else
        c_h = k.ldlt().solve(hw);

    if (!c_h.allFinite())
        throw NumericError("equalizer", "update_equalizer: receive covariance is singular or non-finite");
    return c_h.adjoint();
}

CMat build_precoder_matrix_a(const CMat &equalizer, const CVec &phases, const ChannelSet &channels,
                             const SystemConfig &config)
{
    detail::check_channels(channels, config, "build_precoder_matrix_a");
    detail::expect_shape(equalizer, config.d, config.n_r, "equalizer", "build_precoder_matrix_a");
    detail::check_phases(phases, config, "build_precoder_matrix_a");

    const double rho = config.rho();
    const double r2c = 1.0 - rho * rho;
    const double ks = config.kappa_s();
    const double kd = config.kappa_d();
    const CMat &c = equalizer;
    const CMat &ht = channels.h_t;

    const CMat h_eff = effective_channel(channels, phases, rho);
    const CMat ch = c * h_eff;
    const RVec c_colnorm = c.colwise().squaredNorm().transpose(); // diag{C^H C}
    const CMat g = channels.h_r.adjoint() * phases.asDiagonal();   // Hr^H Theta, n_r x m
    const RVec g1 = (c * g).colwise().squaredNorm().transpose();   // diag{Th^H Hr C^H C Hr^H Th}
    const RVec g2 = g.cwiseAbs2().transpose() * c_colnorm;          // diag{Th^H Hr diag{C^H C} Hr^H Th}

    const CMat base = ch.adjoint() * ch;
    const CMat reflected = ht.adjoint() * g1.cast<cdouble>().asDiagonal() * ht;

    CMat a = base + kd * (h_eff.adjoint() * c_colnorm.cast<cdouble>().asDiagonal() * h_eff) + r2c * reflected +
             kd * r2c * (ht.adjoint() * g2.cast<cdouble>().asDiagonal() * ht);
    a.diagonal() += ks * base.diagonal() + ks * r2c * reflected.diagonal();
    return hermitian_part(a);
}

double lambda_upper_bound(const RVec &z_diag, double tau, double kappa_s)
{
    if (z_diag.size() == 0)
        throw DomainError("lambda_upper_bound: empty Z diagonal");
    if (!(tau > 0.0))
        throw DomainError("lambda_upper_bound: tau must be positive");
    const double budget = tau / (1.0 + kappa_s);
    return std::sqrt(z_diag.sum() / budget) / (1.0 + kappa_s);
}

double precoder_power(const RVec &z_diag, const RVec &s_diag, double lambda, double kappa_s)
{
    const double shift = lambda * (1.0 + kappa_s);
    return (z_diag.array() / (s_diag.array() + shift).square()).sum();
}

namespace
{

struct Bracket
{
    double lo;
    double hi;
};

[[noreturn]] void bisection_failure(const Bracket &b, double power_hi, double budget)
{
    std::ostringstream os;
    os << "update_precoder: bisection did not converge in " << kMaxBisectionIterations
       << " iterations (bracket [" << b.lo << ", " << b.hi << "], power " << power_hi << " vs budget " << budget
       << ")";
    throw SolverError(os.str());
}

// Shrinks [lo, hi] around the root of power(lambda) = budget; power(hi) <= budget throughout.
template <typename PowerFn>
double bisect(PowerFn &&power, Bracket b, double budget, double gap_tol, int &iterations)
{
    double p_hi = power(b.hi);
    while (budget - p_hi > gap_tol)
    {
        if (iterations >= kMaxBisectionIterations)
            bisection_failure(b, p_hi, budget);
        // floating-point resolution of lambda reached
        if (b.hi - b.lo <= 4.0 * std::numeric_limits<double>::epsilon() * b.hi)
            break;
        ++iterations;
        const double mid = 0.5 * (b.lo + b.hi);
        const double p_mid = power(mid);
        if (p_mid > budget)
            b.lo = mid;
        else
        {
            b.hi = mid;
            p_hi = p_mid;
        }
    }
    return b.hi;
}

} // namespace

PrecoderSolution update_precoder(const CMat &equalizer, const CVec &phases, const ChannelSet &channels,
                                 const SystemConfig &config, double tol)
{
    if (!(tol > 0.0))
        throw DomainError("update_precoder: tolerance must be positive");

    const double ks = config.kappa_s();
    const double tau = config.power_budget;
    const double budget = tau / (1.0 + ks);
    const double gap_tol = tol * tau;

    const CMat a = build_precoder_matrix_a(equalizer, phases, channels, config);
    const CMat b = effective_channel(channels, phases, config.rho()).adjoint() * equalizer.adjoint(); // H^H C^H

    const HermitianEigen eig = hermitian_eig(a);
    const RVec &s = eig.values;
    const double s_max = s(0);
    const double s_min = s(s.size() - 1);

    PrecoderSolution out;
    out.a_matrix_rank_deficient = !(s_max > 0.0 && s_min > kRankThreshold * s_max);

    const CMat bt = eig.basis.adjoint() * b; // B^H H^H C^H
    auto from_eigen = [&](double lambda) -> CMat {
        RVec inv(s.size());
        const double shift = lambda * (1.0 + ks);
        for (Eigen::Index i = 0; i < s.size(); ++i)
        {
            const double denom = s(i) + shift;
            // pseudo-inverse on the numerical null space of A at lambda = 0
            inv(i) = (lambda == 0.0 && s(i) <= kRankThreshold * s_max) ? 0.0 : 1.0 / denom;
        }
        return eig.basis * inv.cast<cdouble>().asDiagonal() * bt;
    };

    if (!out.a_matrix_rank_deficient)
    {
        const RVec z = bt.rowwise().squaredNorm(); // diag{B^H H^H C^H C H B}
        auto power = [&](double lambda) { return precoder_power(z, s, lambda, ks); };

        if (power(0.0) <= budget)
            out.multiplier = 0.0;
        else
            out.multiplier = bisect(power, {0.0, lambda_upper_bound(z, tau, ks)}, budget, gap_tol,
                                    out.bisection_iterations);
        out.precoder = from_eigen(out.multiplier);
    }
    else
    {
        const CMat w0 = from_eigen(0.0);
        if (w0.squaredNorm() <= budget)
        {
            out.multiplier = 0.0;
            out.precoder = w0;
        }
        else
        {
            auto solve = [&](double lambda) -> CMat {
                CMat shifted = a;
                shifted.diagonal().array() += lambda * (1.0 + ks);
                return shifted.llt().solve(b);
            };
            auto power = [&](double lambda) { return solve(lambda).squaredNorm(); };

            Bracket br{0.0, 1e-12};
            while (power(br.hi) > budget)
            {
                if (++out.bisection_iterations >= kMaxBisectionIterations)
                    bisection_failure(br, power(br.hi), budget);
                br.lo = br.hi;
                br.hi *= 2.0;
            }
            out.multiplier = bisect(power, br, budget, gap_tol, out.bisection_iterations);
            out.precoder = solve(out.multiplier);
        }
    }

    if (!out.precoder.allFinite())
        throw NumericError("precoder", "update_precoder: non-finite precoder");
    out.power_used = (1.0 + ks) * out.precoder.squaredNorm();
    return out;
}

} // namespace rismse
