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

#ifndef RISMSE_SRC_SHAPE_CHECKS_HPP
#define RISMSE_SRC_SHAPE_CHECKS_HPP

#include "rismse/channel_model.hpp"
#include "rismse/error.hpp"
#include "rismse/system_config.hpp"

#include <string>

namespace rismse::detail
{

inline void expect_shape(const CMat &x, Eigen::Index rows, Eigen::Index cols, const char *name, const char *where)
{
    if (x.rows() != rows || x.cols() != cols)
        throw ShapeError(std::string(where) + ": " + name + " is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
}

inline void check_channels(const ChannelSet &ch, const SystemConfig &config, const char *where)
{
    expect_shape(ch.h_d, config.n_t, config.n_r, "h_d", where);
    expect_shape(ch.h_r, config.m, config.n_r, "h_r", where);
    expect_shape(ch.h_t, config.m, config.n_t, "h_t", where);
}

inline void check_phases(const CVec &theta, const SystemConfig &config, const char *where)
{
    if (theta.size() != config.m)
        throw ShapeError(std::string(where) + ": phase vector has length " + std::to_string(theta.size()) +
                         ", expected " + std::to_string(config.m));
}

inline void check_state_shapes(const TransceiverState &s, const ChannelSet &ch, const SystemConfig &config,
                               const char *where)
{
    check_channels(ch, config, where);
    expect_shape(s.precoder, config.n_t, config.d, "precoder", where);
    expect_shape(s.equalizer, config.d, config.n_r, "equalizer", where);
    check_phases(s.phases, config, where);
}

} // namespace rismse::detail

#endif
