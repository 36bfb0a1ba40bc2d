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

#include "rismse/system_config.hpp"
#include "rismse/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rismse
{

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double noise_power_watts(double density_dbm_per_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw DomainError("noise_power_watts: bandwidth must be positive");
    return dbm_to_watts(density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

void SystemConfig::validate() const
{
    if (n_t < 1 || n_r < 1 || m < 1 || d < 1)
        throw DomainError("antenna, element and stream counts must be >= 1");
    if (d > std::min(n_t, n_r))
        throw DomainError("stream count d=" + std::to_string(d) + " exceeds min(n_t, n_r)");
    if (!(power_budget > 0.0) || !std::isfinite(power_budget))
        throw DomainError("power budget must be positive and finite");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw DomainError("noise power must be positive and finite");
    if (!(rician_factor >= 0.0))
        throw DomainError("rician factor must be nonnegative");
    if (ris_rows < 0 || (ris_rows > 0 && m % ris_rows != 0))
        throw DomainError("ris_rows=" + std::to_string(ris_rows) + " does not divide m=" + std::to_string(m));
}

int SystemConfig::ris_array_rows() const
{
    if (ris_rows > 0)
        return ris_rows;
    int rows = 1;
    for (int r = 1; r * r <= m; ++r)
        if (m % r == 0)
            rows = r;
    return rows;
}

SystemConfig SystemConfig::ideal_hardware() const
{
    SystemConfig out = *this;
    out.impairments = ImpairmentParams::ideal();
    return out;
}

double TransceiverState::transmit_power(double kappa_s) const
{
    return (1.0 + kappa_s) * precoder.squaredNorm();
}

double TransceiverState::modulus_error() const
{
    double err = 0.0;
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        err = std::max(err, std::abs(std::abs(phases(i)) - 1.0));
    return err;
}

bool TransceiverState::feasible(const SystemConfig &config) const
{
    return modulus_error() <= 1e-12 &&
           transmit_power(config.kappa_s()) <= config.power_budget * (1.0 + 1e-9);
}

} // namespace rismse
