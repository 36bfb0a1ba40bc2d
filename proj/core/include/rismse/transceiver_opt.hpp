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

#ifndef RISMSE_TRANSCEIVER_OPT_HPP
#define RISMSE_TRANSCEIVER_OPT_HPP

#include "rismse/channel_model.hpp"
#include "rismse/math_kernels.hpp"
#include "rismse/system_config.hpp"

namespace rismse
{

/// Closed-form MMSE equalizer for fixed precoder and phases:
///   C = W^H H^H K^{-1},  K = receive_covariance(W, theta)
/// K contains sigma^2 I and is therefore invertible for finite inputs; a failed
/// factorization raises NumericError.
CMat update_equalizer(const CMat &precoder, const CVec &phases, const ChannelSet &channels,
                      const SystemConfig &config);

/// Quadratic-form matrix of the MSE in W for fixed C and theta (n_t x n_t, Hermitian PSD):
///
///   A = H^H C^H C H + ks diag{H^H C^H C H} + kd H^H diag{C^H C} H
///     + (1-r2) Ht^H diag{G1} Ht + ks (1-r2) diag{Ht^H diag{G1} Ht} + kd (1-r2) Ht^H diag{G2} Ht
///
/// with G1 = Th^H Hr C^H C Hr^H Th and G2 = Th^H Hr diag{C^H C} Hr^H Th.
CMat build_precoder_matrix_a(const CMat &equalizer, const CVec &phases, const ChannelSet &channels,
                             const SystemConfig &config);

struct PrecoderSolution
{
    CMat precoder;
    double multiplier = 0.0; // lambda >= 0
    bool a_matrix_rank_deficient = false;
    double power_used = 0.0; // (1 + ks) tr{W W^H}
    int bisection_iterations = 0;
};

/// Power-constrained MMSE precoder W = [A + lambda (1 + ks) I]^{-1} H^H C^H.
///
/// lambda = 0 is used when it already meets (1 + ks) tr{WW^H} <= tau. Otherwise lambda is
/// found by bisection: on the eigen-representation sum_i z_i / (s_i + lambda (1 + ks))^2
/// with the bracket [0, lambda_upper_bound] when A is full rank, and on direct solves with a
/// doubling bracket when A is rank deficient (minimum-norm solution at lambda = 0).
/// The returned precoder always satisfies the power constraint.
///
/// `tol` bounds the power gap as a fraction of tau. Throws SolverError when the bisection
/// does not converge within 200 iterations.
PrecoderSolution update_precoder(const CMat &equalizer, const CVec &phases, const ChannelSet &channels,
                                 const SystemConfig &config, double tol = 1e-9);

/// Bound above which the transmit power is below the budget:
/// sqrt(sum_i z_i / (tau / (1 + ks))) / (1 + ks). Throws DomainError for an empty vector.
double lambda_upper_bound(const RVec &z_diag, double tau, double kappa_s);

/// sum_i z_i / (s_i + lambda (1 + ks))^2, i.e. tr{W W^H} as a function of lambda.
double precoder_power(const RVec &z_diag, const RVec &s_diag, double lambda, double kappa_s);

// Smallest/largest eigenvalue ratio at or below which A is treated as rank deficient
inline constexpr double kRankThreshold = 1e-10;
inline constexpr int kMaxBisectionIterations = 200;

} // namespace rismse

#endif
