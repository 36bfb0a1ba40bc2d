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

#ifndef RISMSE_CHANNEL_MODEL_HPP
#define RISMSE_CHANNEL_MODEL_HPP

#include "rismse/math_kernels.hpp"
#include "rismse/system_config.hpp"

#include <random>

namespace rismse
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2 &a, const Point2 &b);

/// Node positions in meters. The user position is not fixed by the reference setup;
/// the default places it near the RIS so the reflected path matters.
struct ScenarioGeometry
{
    Point2 bs_position{0.0, 0.0};
    Point2 ris_position{10.0, 0.0};
    Point2 user_position{10.0, 5.0};

    // Throws DomainError if any two nodes coincide
    void validate() const;
};

struct AnglePair
{
    double azimuth = 0.0;   // rad
    double elevation = 0.0; // rad
};

/// Large- and small-scale fading parameters of one link.
struct FadingParams
{
    double rician_factor = 10.0;          // beta
    double pathloss_exponent_los = 2.0;   // used on the BS-RIS and RIS-user links
    double pathloss_exponent_nlos = 3.75; // used on the direct BS-user link
    AnglePair aod;                        // departure angles of the LoS component
    AnglePair aoa;                        // arrival angles of the LoS component
    double element_spacing = 0.5;         // in carrier wavelengths
    bool random_angles = true;            // generate_scenario redraws aod/aoa per link when set

    void validate() const;
};

// Planar array of rows x cols elements; element (p, q) sits at index p * cols + q
struct ArrayShape
{
    int rows = 1;
    int cols = 1;
    Eigen::Index size() const { return Eigen::Index(rows) * cols; }
};

/// Channels of one realization.
///   h_d: n_t x n_r  (BS - user, direct)
///   h_r: m   x n_r  (RIS - user)
///   h_t: m   x n_t  (BS - RIS)
struct ChannelSet
{
    CMat h_d;
    CMat h_r;
    CMat h_t;

    // Throws ShapeError / NumericError when shapes do not match `config` or entries are not finite
    void validate(const SystemConfig &config) const;
};

/// 10^(PL/10) with PL = -30 - 10 * exponent * log10(distance) dB. Throws DomainError for distance <= 0.
double path_loss_linear(double distance_m, double exponent);

/// UPA array response; entry (p, q) is exp(j 2 pi spacing (p sin(el) cos(az) + q sin(el) sin(az))).
/// Throws ShapeError for an empty array.
CVec upa_steering(double azimuth, double elevation, int rows, int cols, double spacing);

/// sqrt(gain) * (sqrt(beta / (beta + 1)) a_rx a_tx^H + sqrt(1 / (beta + 1)) H_nlos),
/// H_nlos with i.i.d. CN(0, 1) entries drawn row by row. The matrix is rx.size() x tx.size().
CMat rician_channel(double mean_gain, const FadingParams &params, const ArrayShape &rx, const ArrayShape &tx,
                    std::mt19937_64 &rng);

/// Draws all three channels of one realization.
///
/// BS-RIS and RIS-user links are Rician with config.rician_factor and the LoS exponent;
/// the direct link is Rayleigh (beta = 0) with the NLoS exponent. BS and user arrays are
/// n x 1 UPAs, the RIS a config.ris_array_rows() x (m / rows) UPA. Angles are drawn first,
/// then each link runs on its own engine seeded from `rng`, so h_d does not depend on m.
ChannelSet generate_scenario(const SystemConfig &config, const ScenarioGeometry &geometry, const FadingParams &fading,
                             std::mt19937_64 &rng);

/// i.i.d. CN(0, 1) matrix
CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng);

} // namespace rismse

#endif
