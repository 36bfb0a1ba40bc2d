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

#ifndef RISMSE_SYSTEM_CONFIG_HPP
#define RISMSE_SYSTEM_CONFIG_HPP

#include "rismse/impairment_model.hpp"
#include "rismse/math_kernels.hpp"

namespace rismse
{

/// Noise power in watts for a density in dBm/Hz over `bandwidth_hz`.
double noise_power_watts(double density_dbm_per_hz, double bandwidth_hz);

double dbm_to_watts(double dbm);

/// Scalars of the link model: array sizes, impairments, noise and power budget.
///
/// Defaults are the reference operating point: 8 BS antennas, 4 user antennas, 4 streams,
/// 40 RIS elements, kappa_s = kappa_d = 0.1, concentration 20, noise -104 dBm/Hz over 1 MHz.
struct SystemConfig
{
    int n_t = 8;
    int n_r = 4;
    int m = 40;
    int d = 4;
    int ris_rows = 0; // RIS is a ris_rows x (m / ris_rows) UPA; 0 picks the most square factorization

    ImpairmentParams impairments = ImpairmentParams::make(0.1, 0.1, 20.0);

    double bandwidth_hz = 1e6;
    double noise_power = noise_power_watts(-104.0, 1e6); // sigma_n^2 [W]
    double power_budget = dbm_to_watts(30.0);            // tau [W]
    double rician_factor = 10.0;

    /// Throws DomainError when an invariant is violated
    /// (d <= min(n_t, n_r), counts >= 1, tau > 0, sigma^2 > 0, ris_rows divides m).
    void validate() const;

    // Rows of the RIS UPA after resolving ris_rows = 0
    int ris_array_rows() const;

    double rho() const { return impairments.rho; }
    double kappa_s() const { return impairments.kappa_s; }
    double kappa_d() const { return impairments.kappa_d; }

    // Same dimensions and budget with kappa_s = kappa_d = 0 and no phase noise
    SystemConfig ideal_hardware() const;
};

/// Decision variables: precoder W (n_t x d), equalizer C (d x n_r), RIS phases theta (m, unit modulus).
struct TransceiverState
{
    CMat precoder;
    CMat equalizer;
    CVec phases;

    // (1 + kappa_s) tr{W W^H}
    double transmit_power(double kappa_s) const;

    // max_m | |theta_m| - 1 |
    double modulus_error() const;

    // Unit-modulus phases within 1e-12 and power within tau (1 + 1e-9)
    bool feasible(const SystemConfig &config) const;
};

} // namespace rismse

#endif
