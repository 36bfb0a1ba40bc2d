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

#include "rismse/channel_model.hpp"
#include "rismse/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rismse
{

double distance(const Point2 &a, const Point2 &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

void ScenarioGeometry::validate() const
{
    if (!(distance(bs_position, ris_position) > 0.0))
        throw DomainError("geometry: BS and RIS coincide");
    if (!(distance(ris_position, user_position) > 0.0))
        throw DomainError("geometry: RIS and user coincide");
    if (!(distance(bs_position, user_position) > 0.0))
        throw DomainError("geometry: BS and user coincide");
}

void FadingParams::validate() const
{
    if (!(rician_factor >= 0.0))
        throw DomainError("fading: rician factor must be nonnegative");
    if (!(pathloss_exponent_los > 0.0) || !(pathloss_exponent_nlos > 0.0))
        throw DomainError("fading: path-loss exponents must be positive");
    if (!(element_spacing > 0.0))
        throw DomainError("fading: element spacing must be positive");
}

void ChannelSet::validate(const SystemConfig &config) const
{
    auto check = [](const CMat &h, Eigen::Index rows, Eigen::Index cols, const char *name) {
        if (h.rows() != rows || h.cols() != cols)
            throw ShapeError(std::string(name) + " is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                             ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
        if (!h.allFinite())
            throw NumericError(name, std::string(name) + " has non-finite entries");
    };
    check(h_d, config.n_t, config.n_r, "h_d");
    check(h_r, config.m, config.n_r, "h_r");
    check(h_t, config.m, config.n_t, "h_t");
}

double path_loss_linear(double distance_m, double exponent)
{
    if (!(distance_m > 0.0))
        throw DomainError("path_loss_linear: distance must be positive, got " + std::to_string(distance_m));
    const double pl_db = -30.0 - 10.0 * exponent * std::log10(distance_m);
    return std::pow(10.0, pl_db / 10.0);
}

CVec upa_steering(double azimuth, double elevation, int rows, int cols, double spacing)
{
    if (rows < 1 || cols < 1)
        throw ShapeError("upa_steering: array must have at least one element");
    const double kx = 2.0 * std::numbers::pi * spacing * std::sin(elevation) * std::cos(azimuth);
    const double ky = 2.0 * std::numbers::pi * spacing * std::sin(elevation) * std::sin(azimuth);
    CVec a(Eigen::Index(rows) * cols);
    for (int p = 0; p < rows; ++p)
        for (int q = 0; q < cols; ++q)
            a(Eigen::Index(p) * cols + q) = std::polar(1.0, p * kx + q * ky);
    return a;
}

CMat complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    CMat out(rows, cols);
    // column-major fill keeps the draw order fixed
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            out(i, j) = cdouble(re, im);
        }
    return out;
}

CMat rician_channel(double mean_gain, const FadingParams &params, const ArrayShape &rx, const ArrayShape &tx,
                    std::mt19937_64 &rng)
{
    if (!(mean_gain >= 0.0))
        throw DomainError("rician_channel: mean gain must be nonnegative");
    params.validate();

    const double beta = params.rician_factor;
    const CVec a_rx = upa_steering(params.aoa.azimuth, params.aoa.elevation, rx.rows, rx.cols, params.element_spacing);
    const CVec a_tx = upa_steering(params.aod.azimuth, params.aod.elevation, tx.rows, tx.cols, params.element_spacing);
    const CMat los = a_rx * a_tx.adjoint();
    // row-major fill: receive element i always consumes the same draws, whatever rx.size() is
    const CMat nlos = complex_gaussian(tx.size(), rx.size(), rng).transpose();

    return std::sqrt(mean_gain) * (std::sqrt(beta / (beta + 1.0)) * los + std::sqrt(1.0 / (beta + 1.0)) * nlos);
}

ChannelSet generate_scenario(const SystemConfig &config, const ScenarioGeometry &geometry, const FadingParams &fading,
                             std::mt19937_64 &rng)
{
    config.validate();
    geometry.validate();
    fading.validate();

    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> elevation(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    auto link_params = [&]() {
        FadingParams p = fading;
        p.rician_factor = config.rician_factor;
        if (fading.random_angles)
        {
            p.aod = {azimuth(rng), elevation(rng)};
            p.aoa = {azimuth(rng), elevation(rng)};
        }
        return p;
    };

    const int ris_rows = config.ris_array_rows();
    const ArrayShape ris{ris_rows, config.m / ris_rows};
    const ArrayShape bs{config.n_t, 1};
    const ArrayShape user{config.n_r, 1};

    const FadingParams bs_ris = link_params();
    const FadingParams ris_user = link_params();
    FadingParams direct = fading;
    direct.rician_factor = 0.0;

    // independent engine per link so one link's draws do not depend on another's dimensions
    std::mt19937_64 rng_t(rng()), rng_r(rng()), rng_d(rng());

    ChannelSet ch;
    ch.h_t = rician_channel(path_loss_linear(distance(geometry.bs_position, geometry.ris_position),
                                             fading.pathloss_exponent_los),
                            bs_ris, ris, bs, rng_t);
    ch.h_r = rician_channel(path_loss_linear(distance(geometry.ris_position, geometry.user_position),
                                             fading.pathloss_exponent_los),
                            ris_user, ris, user, rng_r);
    ch.h_d = rician_channel(path_loss_linear(distance(geometry.bs_position, geometry.user_position),
                                             fading.pathloss_exponent_nlos),
                            direct, bs, user, rng_d);
    return ch;
}

} // namespace rismse
