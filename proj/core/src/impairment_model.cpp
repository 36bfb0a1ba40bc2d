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

#include "rismse/impairment_model.hpp"
#include "rismse/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rismse
{

ImpairmentParams ImpairmentParams::make(double kappa_s, double kappa_d, double concentration)
{
    if (!(kappa_s >= 0.0 && kappa_s < 1.0))
        throw DomainError("kappa_s must lie in [0, 1), got " + std::to_string(kappa_s));
    if (!(kappa_d >= 0.0 && kappa_d < 1.0))
        throw DomainError("kappa_d must lie in [0, 1), got " + std::to_string(kappa_d));
    if (std::isnan(concentration) || concentration < 0.0)
        throw DomainError("concentration must be nonnegative, got " + std::to_string(concentration));

    ImpairmentParams p;
    p.kappa_s = kappa_s;
    p.kappa_d = kappa_d;
    p.concentration = concentration;
    p.rho = std::isinf(concentration) ? 1.0 : bessel_i_ratio(concentration);
    return p;
}

ImpairmentParams ImpairmentParams::ideal()
{
    return make(0.0, 0.0, std::numeric_limits<double>::infinity());
}

CMat tx_distortion_cov(const CMat &precoder, double kappa_s)
{
    if (kappa_s < 0.0)
        throw DomainError("tx_distortion_cov: kappa_s must be nonnegative");
    CMat out = CMat::Zero(precoder.rows(), precoder.rows());
    out.diagonal() = (kappa_s * precoder.rowwise().squaredNorm()).cast<cdouble>();
    return out;
}

VonMisesDistribution::VonMisesDistribution(double concentration) : kappa_(concentration)
{
    if (std::isnan(kappa_) || kappa_ < 0.0)
        throw DomainError("von Mises: concentration must be nonnegative, got " + std::to_string(kappa_));
    if (std::isfinite(kappa_) && kappa_ >= 1e-8)
    {
        // Best & Fisher (1979)
        const double s = std::sqrt(1.0 + 4.0 * kappa_ * kappa_);
        const double tau = 1.0 + s;
        // (tau - sqrt(2 tau)) / (2 kappa) without the cancellation at small kappa
        const double rho = 2.0 * kappa_ * tau / ((s + 1.0) * (tau + std::sqrt(2.0 * tau)));
        r_ = (1.0 + rho * rho) / (2.0 * rho);
    }
}

double VonMisesDistribution::operator()(std::mt19937_64 &rng) const
{
    using std::numbers::pi;
    if (std::isinf(kappa_))
        return 0.0;

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (kappa_ < 1e-8)
        return pi * (2.0 * uni(rng) - 1.0);

    // the density is a wrapped normal to double precision here
    if (kappa_ > 1e6)
    {
        std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(kappa_));
        return std::remainder(gauss(rng), 2.0 * pi);
    }

    double f = 0.0;
    for (;;)
    {
        const double u1 = uni(rng);
        const double u2 = uni(rng);
        const double z = std::cos(pi * u1);
        f = (1.0 + r_ * z) / (r_ + z);
        const double c = kappa_ * (r_ - f);
        if (c * (2.0 - c) - u2 > 0.0)
            break;
        if (std::log(c / u2) + 1.0 - c >= 0.0)
            break;
    }
    const double angle = std::acos(std::clamp(f, -1.0, 1.0));
    return (uni(rng) > 0.5) ? angle : -angle;
}

double sample_von_mises(double concentration, std::mt19937_64 &rng)
{
    return VonMisesDistribution(concentration)(rng);
}

RVec sample_phase_noise(double concentration, Eigen::Index count, std::mt19937_64 &rng)
{
    const VonMisesDistribution dist(concentration);
    RVec out(count);
    for (Eigen::Index i = 0; i < count; ++i)
        out(i) = dist(rng);
    return out;
}

CMat phase_autocorrelation(const CMat &pi_matrix, double rho)
{
    if (pi_matrix.rows() != pi_matrix.cols())
        throw ShapeError("phase_autocorrelation: matrix must be square");
    const double r2 = rho * rho;
    CMat out = r2 * pi_matrix;
    out.diagonal() = pi_matrix.diagonal();
    return out;
}

} // namespace rismse
