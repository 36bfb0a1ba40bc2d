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

#ifndef RISMSE_IMPAIRMENT_MODEL_HPP
#define RISMSE_IMPAIRMENT_MODEL_HPP

#include "rismse/math_kernels.hpp"

#include <random>

namespace rismse
{

/// Transceiver distortion coefficients and RIS phase-noise statistics.
///
/// `rho` caches bessel_i_ratio(concentration). An infinite concentration denotes an ideal
/// RIS (no phase noise) and maps to rho = 1.
struct ImpairmentParams
{
    double kappa_s = 0.0;       // transmit distortion, normalized variance
    double kappa_d = 0.0;       // receive distortion, normalized variance
    double concentration = 0.0; // Von Mises concentration of the RIS phase noise
    double rho = 0.0;           // E[exp(j eps)]

    // Validates the coefficients and computes rho. Throws DomainError.
    static ImpairmentParams make(double kappa_s, double kappa_d, double concentration);

    // kappa_s = kappa_d = 0, no phase noise
    static ImpairmentParams ideal();
};

/// kappa_s * diag{W W^H}, the covariance of the transmit distortion noise.
CMat tx_distortion_cov(const CMat &precoder, double kappa_s);

/// Zero-mean Von Mises distribution on (-pi, pi].
///
/// Best-Fisher rejection sampler; uniform at (near-)zero concentration, a wrapped normal
/// beyond 1e6 and exactly 0 at infinite concentration.
class VonMisesDistribution
{
public:
    // Throws DomainError for negative or NaN concentration
    explicit VonMisesDistribution(double concentration);

    double operator()(std::mt19937_64 &rng) const;

    double concentration() const { return kappa_; }

private:
    double kappa_;
    double r_ = 0.0;
};

double sample_von_mises(double concentration, std::mt19937_64 &rng);

/// `count` i.i.d. phase-noise samples.
RVec sample_phase_noise(double concentration, Eigen::Index count, std::mt19937_64 &rng);

/// Analytic E[Theta_hat * Pi * Theta_hat^H] = rho^2 Pi + (1 - rho^2) diag{Pi}.
/// Throws ShapeError for a non-square `pi_matrix`.
CMat phase_autocorrelation(const CMat &pi_matrix, double rho);

} // namespace rismse

#endif
