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

#ifndef RISMSE_MSE_OBJECTIVE_HPP
#define RISMSE_MSE_OBJECTIVE_HPP

#include "rismse/channel_model.hpp"
#include "rismse/math_kernels.hpp"
#include "rismse/system_config.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace rismse
{

/// Mean effective channel H_d^H + rho H_r^H diag(theta) H_t (n_r x n_t), i.e. the
/// combined channel averaged over RIS phase noise.
CMat effective_channel(const ChannelSet &channels, const CVec &phases, double rho);

/// Term families of the second-order MSE expansion.
///
/// `total` is the optimized objective and excludes `y_term`, the kappa_s * kappa_d
/// cross-distortion contribution, which is small and is reported separately so the exact
/// second-order MSE is `total + y_term`.
struct MseBreakdown
{
    double total = 0.0;
    double signal_term = 0.0;         // tr{C Nx C^H}
    double phase_noise_term = 0.0;    // (1 - rho^2) tr{C Hr^H Th diag{Nt} Th^H Hr C^H}
    double tx_distortion_terms = 0.0; // kappa_s (...) + kappa_s (1 - rho^2) (...)
    double rx_distortion_terms = 0.0; // kappa_d (...) + kappa_d (1 - rho^2) (...)
    double cross_terms = 0.0;         // -2 Re tr{C H W}
    double awgn_term = 0.0;           // sigma^2 tr{C C^H}
    double constant_term = 0.0;       // tr{I_d}
    double y_term = 0.0;

    double exact() const { return total + y_term; }
};

/// Evaluates the analytic MSE of `state`. Throws ShapeError on dimension mismatch and
/// NumericError (naming the term) on a non-finite intermediate.
MseBreakdown analytic_mse(const TransceiverState &state, const ChannelSet &channels, const SystemConfig &config);

/// Interference-plus-noise covariance seen by the equalizer (n_r x n_r):
/// Nx + ks Nv + kd diag{Nx} + s2 I + (1-r2) R1 + ks (1-r2) R2 + kd (1-r2) diag{R1}.
/// The equalizer part of the MSE is tr{C K C^H} - 2 Re tr{C H W} + d.
CMat receive_covariance(const CMat &precoder, const CVec &phases, const ChannelSet &channels,
                        const SystemConfig &config);

struct MonteCarloEstimate
{
    double estimate = 0.0;
    std::optional<double> std_error; // empty for a single sample
    std::uint64_t samples = 0;
};

/// Simulates the physical link end to end and averages |s_hat - s|^2.
///
/// Per sample draws s ~ CN(0, I), z_s ~ CN(0, ks diag{WW^H}), Von Mises phase noise,
/// z_d ~ CN(0, kd diag{y y^H}) conditioned on the realized undistorted receive vector
/// and AWGN. Throws DomainError for num_samples < 1.
MonteCarloEstimate monte_carlo_mse(const TransceiverState &state, const ChannelSet &channels,
                                   const SystemConfig &config, std::uint64_t num_samples, std::mt19937_64 &rng);

/// Quadratic form of the MSE in the RIS phase vector:
///   MSE(theta) = theta^H xi theta + 2 rho Re{theta^H q} + offset    for |theta_m| = 1.
struct PhaseQuadratic
{
    CMat xi; // Hermitian, PSD
    CVec q;
    CVec omega, psi, t_vec, v_vec; // diagonals of Omega, Psi, T, V
    double offset = 0.0;           // theta-independent remainder of analytic_mse().total
};

/// Builds xi (six Hadamard terms) and q = omega* + ks psi* + kd t* - v* for fixed W, C.
PhaseQuadratic build_phase_quadratic(const CMat &precoder, const CMat &equalizer, const ChannelSet &channels,
                                     const SystemConfig &config);

/// f(theta) = theta^H xi theta + 2 rho Re{theta^H q}
double phase_objective(const PhaseQuadratic &quad, const CVec &theta, double rho);

/// mse / d. Throws DomainError for d < 1.
double nmse(double mse, int d);

} // namespace rismse

#endif
