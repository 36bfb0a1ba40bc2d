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

#include <catch2/catch_amalgamated.hpp>

#include "rismse/channel_model.hpp"
#include "rismse/error.hpp"

#include <cmath>
#include <numbers>

using namespace rismse;

TEST_CASE("path_loss_linear - examples")
{
    CHECK(std::abs(path_loss_linear(1.0, 2.0) - 1e-3) < 1e-18);
    CHECK(std::abs(path_loss_linear(1.0, 3.75) - 1e-3) < 1e-18);
    CHECK(std::abs(path_loss_linear(10.0, 2.0) - 1e-5) < 1e-20);
    CHECK(std::abs(path_loss_linear(10.0, 3.75) / std::pow(10.0, -6.75) - 1.0) < 1e-13);
    CHECK(std::abs(path_loss_linear(20.0, 2.0) * 4.0 / path_loss_linear(10.0, 2.0) - 1.0) < 1e-13);
    CHECK_THROWS_AS(path_loss_linear(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(path_loss_linear(-1.0, 2.0), DomainError);
}

TEST_CASE("noise power of the default link")
{
    CHECK(std::abs(noise_power_watts(-104.0, 1e6) / 3.981071705534972e-8 - 1.0) < 1e-12);
    CHECK(std::abs(dbm_to_watts(30.0) - 1.0) < 1e-15);
    CHECK(std::abs(SystemConfig{}.noise_power / 3.981e-8 - 1.0) < 1e-3);
}

TEST_CASE("upa_steering - examples")
{
    const CVec flat = upa_steering(1.234, 0.0, 2, 2, 0.5);
    CHECK((flat - CVec::Ones(4)).norm() < 1e-15);
    const CVec one = upa_steering(0.3, 0.7, 1, 1, 0.5);
    CHECK(one.size() == 1);
    CHECK(std::abs(one(0) - 1.0) < 1e-15);

    // phases 0, pi, 2 pi, 3 pi
    const CVec line = upa_steering(0.0, 0.5 * std::numbers::pi, 4, 1, 0.5);
    for (int p = 0; p < 4; ++p)
        CHECK(std::abs(line(p) - std::polar(1.0, p * std::numbers::pi)) < 1e-14);

    CHECK_THROWS_AS(upa_steering(0.0, 0.0, 0, 3, 0.5), ShapeError);
}

TEST_CASE("upa_steering - unit modulus and element indexing")
{
    const double az = 0.9, el = -0.4, sp = 0.37;
    const int rows = 3, cols = 5;
    const CVec a = upa_steering(az, el, rows, cols, sp);
    REQUIRE(a.size() == rows * cols);
    for (int p = 0; p < rows; ++p)
        for (int q = 0; q < cols; ++q)
        {
            const double phase =
                2.0 * std::numbers::pi * sp * (p * std::sin(el) * std::cos(az) + q * std::sin(el) * std::sin(az));
            CHECK(std::abs(a(p * cols + q) - std::polar(1.0, phase)) < 1e-13);
            CHECK(std::abs(std::abs(a(p * cols + q)) - 1.0) < 1e-15);
        }
}

TEST_CASE("rician_channel - LoS limit")
{
    FadingParams fp;
    fp.rician_factor = 1e12;
    fp.aod = {0.4, 0.3};
    fp.aoa = {1.1, -0.2};
    std::mt19937_64 rng(1);
    const ArrayShape rx{2, 3}, tx{4, 1};
    const CMat h = rician_channel(2e-3, fp, rx, tx, rng);
    const CMat los = std::sqrt(2e-3) * upa_steering(1.1, -0.2, 2, 3, 0.5) *
                     upa_steering(0.4, 0.3, 4, 1, 0.5).adjoint();
    CHECK(rel_frobenius(h, los) < 1e-5);
    CHECK_THROWS_AS(rician_channel(-1.0, fp, rx, tx, rng), DomainError);
}

TEST_CASE("rician_channel - Monte Carlo moments")
{
    std::mt19937_64 rng(2);
    const double gain = 3.0;
    const int n = 100000;
    FadingParams fp;
    fp.aod = {0.2, 0.5};
    fp.aoa = {2.0, 0.1};
    for (double beta : {0.0, 1.0, 10.0})
    {
        fp.rician_factor = beta;
        cdouble mean = 0.0;
        double power = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const CMat h = rician_channel(gain, fp, ArrayShape{1, 2}, ArrayShape{2, 1}, rng);
            mean += h(1, 0);
            power += std::norm(h(1, 0));
        }
        mean /= double(n);
        power /= double(n);
        INFO("beta = " << beta);
        CHECK(std::abs(power / gain - 1.0) < 0.05);
        if (beta == 0.0)
            CHECK(std::abs(mean) <= 3.0 * std::sqrt(gain / n));
        else
        {
            const CMat los = upa_steering(2.0, 0.1, 1, 2, 0.5) * upa_steering(0.2, 0.5, 2, 1, 0.5).adjoint();
            const cdouble expected = std::sqrt(gain * beta / (beta + 1.0)) * los(1, 0);
            CHECK(std::abs(mean - expected) <= 4.0 * std::sqrt(gain / (beta + 1.0) / n));
        }
    }
}

TEST_CASE("generate_scenario - shapes and determinism")
{
    SystemConfig cfg;
    std::mt19937_64 a(42), b(42), c(43);
    const ChannelSet x = generate_scenario(cfg, ScenarioGeometry{}, FadingParams{}, a);
    const ChannelSet y = generate_scenario(cfg, ScenarioGeometry{}, FadingParams{}, b);
    const ChannelSet z = generate_scenario(cfg, ScenarioGeometry{}, FadingParams{}, c);
    CHECK(x.h_d.rows() == 8);
    CHECK(x.h_d.cols() == 4);
    CHECK(x.h_r.rows() == 40);
    CHECK(x.h_r.cols() == 4);
    CHECK(x.h_t.rows() == 40);
    CHECK(x.h_t.cols() == 8);
    CHECK(x.h_d == y.h_d);
    CHECK(x.h_r == y.h_r);
    CHECK(x.h_t == y.h_t);
    CHECK(x.h_t != z.h_t);
    CHECK_NOTHROW(x.validate(cfg));

    SystemConfig other = cfg;
    other.m = 41;
    CHECK_THROWS_AS(x.validate(other), ShapeError);
}

TEST_CASE("generate_scenario - direct link independent of the RIS size")
{
    SystemConfig small, large;
    small.m = 20;
    large.m = 70;
    std::mt19937_64 a(5), b(5);
    const ChannelSet x = generate_scenario(small, ScenarioGeometry{}, FadingParams{}, a);
    const ChannelSet y = generate_scenario(large, ScenarioGeometry{}, FadingParams{}, b);
    CHECK(x.h_d == y.h_d);
}

TEST_CASE("generate_scenario - per-entry power follows path loss")
{
    SystemConfig cfg;
    cfg.m = 4;
    cfg.n_t = 2;
    cfg.n_r = 2;
    cfg.d = 2;
    std::mt19937_64 rng(9);
    const int n = 10000;
    double pt = 0.0, pr = 0.0, pd = 0.0;
    for (int k = 0; k < n; ++k)
    {
        const ChannelSet ch = generate_scenario(cfg, ScenarioGeometry{}, FadingParams{}, rng);
        pt += ch.h_t.squaredNorm() / double(ch.h_t.size());
        pr += ch.h_r.squaredNorm() / double(ch.h_r.size());
        pd += ch.h_d.squaredNorm() / double(ch.h_d.size());
    }
    CHECK(std::abs(pt / n / path_loss_linear(10.0, 2.0) - 1.0) < 0.05);
    CHECK(std::abs(pr / n / path_loss_linear(5.0, 2.0) - 1.0) < 0.05);
    CHECK(std::abs(pd / n / path_loss_linear(std::sqrt(125.0), 3.75) - 1.0) < 0.05);

    // doubling the BS-RIS distance quarters the power
    ScenarioGeometry far;
    far.ris_position = {20.0, 0.0};
    far.user_position = {20.0, 5.0};
    double pt_far = 0.0;
    for (int k = 0; k < n; ++k)
        pt_far += generate_scenario(cfg, far, FadingParams{}, rng).h_t.squaredNorm() / 8.0;
    CHECK(std::abs(pt / pt_far / 4.0 - 1.0) < 0.05);
}

TEST_CASE("generate_scenario - degenerate inputs")
{
    SystemConfig cfg;
    std::mt19937_64 rng(1);
    ScenarioGeometry g;
    g.user_position = g.ris_position;
    CHECK_THROWS_AS(generate_scenario(cfg, g, FadingParams{}, rng), DomainError);

    FadingParams f;
    f.element_spacing = 0.0;
    CHECK_THROWS_AS(generate_scenario(cfg, ScenarioGeometry{}, f, rng), DomainError);
    f = FadingParams{};
    f.pathloss_exponent_los = -1.0;
    CHECK_THROWS_AS(generate_scenario(cfg, ScenarioGeometry{}, f, rng), DomainError);

    SystemConfig bad = cfg;
    bad.d = 5;
    CHECK_THROWS_AS(generate_scenario(bad, ScenarioGeometry{}, FadingParams{}, rng), DomainError);
}

TEST_CASE("SystemConfig - RIS array factorization")
{
    SystemConfig cfg;
    for (auto [m, rows] : {std::pair{40, 5}, {36, 6}, {7, 1}, {1, 1}, {70, 7}, {20, 4}})
    {
        cfg.m = m;
        CHECK(cfg.ris_array_rows() == rows);
    }
    cfg.m = 40;
    cfg.ris_rows = 8;
    CHECK(cfg.ris_array_rows() == 8);
    cfg.ris_rows = 3;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
