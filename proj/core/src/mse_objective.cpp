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

#include "rismse/mse_objective.hpp"
#include "rismse/error.hpp"
#include "rismse/impairment_model.hpp"
#include "shape_checks.hpp"

#include <cmath>
#include <string>

namespace rismse
{

namespace
{

// tr{C diag{X} C^H} given the squared column norms of C
double weighted_diag_trace(const CVec &diag_x, const RVec &c_colnorm)
{
    return (diag_x.real().array() * c_colnorm.array()).sum();
}

double finite_or_throw(double value, const char *term)
{
    if (!std::isfinite(value))
        throw NumericError(term, std::string("analytic_mse: non-finite ") + term);
    return value;
}

// Hr^H diag(theta) diag(w) diag(theta)^H Hr for real weights w
CMat reflected_gram(const CMat &hr_theta_h, const RVec &w)
{
    return hr_theta_h * w.cast<cdouble>().asDiagonal() * hr_theta_h.adjoint();
}

} // namespace

CMat effective_channel(const ChannelSet &channels, const CVec &phases, double rho)
{
    if (channels.h_r.rows() != phases.size() || channels.h_t.rows() != phases.size())
        throw ShapeError("effective_channel: phase vector length does not match the RIS size");
    if (channels.h_d.rows() != channels.h_t.cols() || channels.h_d.cols() != channels.h_r.cols())
        throw ShapeError("effective_channel: inconsistent channel shapes");
    return channels.h_d.adjoint() + rho * channels.h_r.adjoint() * phases.asDiagonal() * channels.h_t;
}

MseBreakdown analytic_mse(const TransceiverState &state, const ChannelSet &channels, const SystemConfig &config)
{
    detail::check_state_shapes(state, channels, config, "analytic_mse");

    const double rho = config.rho();
    const double r2c = 1.0 - rho * rho;
    const double ks = config.kappa_s();
    const double kd = config.kappa_d();
    const CMat &w = state.precoder;
    const CMat &c = state.equalizer;

    const CMat h_eff = effective_channel(channels, state.phases, rho);
    const CMat hw = h_eff * w;
    const RVec dw = w.rowwise().squaredNorm();                       // diag{W W^H}
    const RVec nt = (channels.h_t * w).rowwise().squaredNorm();      // diag{Ht W W^H Ht^H}
    const RVec nrr = channels.h_t.cwiseAbs2() * dw;                  // diag{Ht diag{WW^H} Ht^H}
    const CMat g = channels.h_r.adjoint() * state.phases.asDiagonal(); // Hr^H Theta
    const RVec c_colnorm = c.colwise().squaredNorm().transpose();

    const CMat nx = hw * hw.adjoint();
    const CMat nv = h_eff * dw.cast<cdouble>().asDiagonal() * h_eff.adjoint();
    const CMat r1 = reflected_gram(g, nt);
    const CMat r2 = reflected_gram(g, nrr);

    MseBreakdown out;
    out.signal_term = finite_or_throw((c * hw).squaredNorm(), "signal_term");
    out.phase_noise_term = finite_or_throw(r2c * (c * r1 * c.adjoint()).trace().real(), "phase_noise_term");
    out.tx_distortion_terms = finite_or_throw(ks * (c * nv * c.adjoint()).trace().real() +
                                                  ks * r2c * (c * r2 * c.adjoint()).trace().real(),
                                              "tx_distortion_terms");
    out.rx_distortion_terms = finite_or_throw(kd * weighted_diag_trace(nx.diagonal(), c_colnorm) +
                                                  kd * r2c * weighted_diag_trace(r1.diagonal(), c_colnorm),
                                              "rx_distortion_terms");
    out.cross_terms = finite_or_throw(-2.0 * (c * hw).trace().real(), "cross_terms");
    out.awgn_term = finite_or_throw(config.noise_power * c.squaredNorm(), "awgn_term");
    out.constant_term = static_cast<double>(config.d);
    out.y_term = finite_or_throw(ks * kd * (weighted_diag_trace(nv.diagonal(), c_colnorm) +
                                            r2c * weighted_diag_trace(r2.diagonal(), c_colnorm)),
                                 "y_term");

    out.total = out.signal_term + out.phase_noise_term + out.tx_distortion_terms + out.rx_distortion_terms +
                out.cross_terms + out.awgn_term + out.constant_term;
    return out;
}

CMat receive_covariance(const CMat &precoder, const CVec &phases, const ChannelSet &channels,
                        const SystemConfig &config)
{
    const double rho = config.rho();
    const double r2c = 1.0 - rho * rho;
    const double ks = config.kappa_s();
    const double kd = config.kappa_d();

    const CMat h_eff = effective_channel(channels, phases, rho);
    const CMat hw = h_eff * precoder;
    const RVec dw = precoder.rowwise().squaredNorm();
    const RVec nt = (channels.h_t * precoder).rowwise().squaredNorm();
    const RVec nrr = channels.h_t.cwiseAbs2() * dw;
    const CMat g = channels.h_r.adjoint() * phases.asDiagonal();

    const CMat nx = hw * hw.adjoint();
    const CMat r1 = reflected_gram(g, nt);

    CMat k = nx + ks * (h_eff * dw.cast<cdouble>().asDiagonal() * h_eff.adjoint()) + r2c * r1 +
             ks * r2c * reflected_gram(g, nrr);
    k.diagonal() += kd * nx.diagonal() + kd * r2c * r1.diagonal();
    k.diagonal().array() += config.noise_power;
    return hermitian_part(k);
}

MonteCarloEstimate monte_carlo_mse(const TransceiverState &state, const ChannelSet &channels,
                                   const SystemConfig &config, std::uint64_t num_samples, std::mt19937_64 &rng)
{
    if (num_samples < 1)
        throw DomainError("monte_carlo_mse: num_samples must be >= 1");
    detail::check_state_shapes(state, channels, config, "monte_carlo_mse");

    const CMat &w = state.precoder;
    const CMat &c = state.equalizer;
    const CMat hd_h = channels.h_d.adjoint();
    const CMat hr_h = channels.h_r.adjoint();
    const CMat &ht = channels.h_t;
    const RVec zs_std = (config.kappa_s() * w.rowwise().squaredNorm()).cwiseSqrt();
    const double sqrt_kd = std::sqrt(config.kappa_d());
    const double noise_std = std::sqrt(config.noise_power);

    const VonMisesDistribution phase_noise(config.impairments.concentration);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    auto cn = [&]() {
        const double re = gauss(rng);
        return cdouble(re, gauss(rng));
    };

    const Eigen::Index d = w.cols();
    const Eigen::Index n_t = w.rows();
    const Eigen::Index m = ht.rows();
    const Eigen::Index n_r = hd_h.rows();
    CVec s(d), x(n_t), t(m), y(n_r), err(d);

    // Welford
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t k = 0; k < num_samples; ++k)
    {
        for (Eigen::Index i = 0; i < d; ++i)
            s(i) = cn();
        x.noalias() = w * s;
        for (Eigen::Index i = 0; i < n_t; ++i)
            x(i) += zs_std(i) * cn();

        t.noalias() = ht * x;
        for (Eigen::Index i = 0; i < m; ++i)
            t(i) *= state.phases(i) * std::polar(1.0, phase_noise(rng));
        y.noalias() = hd_h * x;
        y.noalias() += hr_h * t;

        for (Eigen::Index i = 0; i < n_r; ++i)
            y(i) += sqrt_kd * std::abs(y(i)) * cn() + noise_std * cn();

        err.noalias() = c * y;
        err -= s;
        const double value = err.squaredNorm();

        const double delta = value - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (value - mean);
    }

    MonteCarloEstimate out;
    out.estimate = mean;
    out.samples = num_samples;
    if (num_samples > 1)
        out.std_error = std::sqrt(m2 / static_cast<double>(num_samples - 1) / static_cast<double>(num_samples));
    return out;
}

PhaseQuadratic build_phase_quadratic(const CMat &precoder, const CMat &equalizer, const ChannelSet &channels,
                                     const SystemConfig &config)
{
    const Eigen::Index m = channels.h_t.rows();
    TransceiverState probe{precoder, equalizer, CVec::Ones(m)};
    detail::check_state_shapes(probe, channels, config, "build_phase_quadratic");

    const double rho = config.rho();
    const double r2 = rho * rho;
    const double ks = config.kappa_s();
    const double kd = config.kappa_d();
    const CMat &w = precoder;
    const CMat &c = equalizer;
    const CMat &ht = channels.h_t;
    const CMat &hr = channels.h_r;
    const CMat &hd = channels.h_d;

    const RVec dw = w.rowwise().squaredNorm();
    const RVec c_colnorm = c.colwise().squaredNorm().transpose();
    const CMat htw = ht * w;     // m x d
    const CMat chr_h = c * hr.adjoint(); // d x m

    const CMat b1 = chr_h.adjoint() * chr_h;                                          // Hr C^H C Hr^H
    const CMat b2 = hr * c_colnorm.cast<cdouble>().asDiagonal() * hr.adjoint();      // Hr diag{C^H C} Hr^H
    const CMat n_t = htw * htw.adjoint();                                             // Ht W W^H Ht^H
    const CMat n_r = ht * dw.cast<cdouble>().asDiagonal() * ht.adjoint();            // Ht diag{WW^H} Ht^H

    PhaseQuadratic quad;
    quad.xi = r2 * b1.cwiseProduct(n_t.transpose()) + r2 * ks * b1.cwiseProduct(n_r.transpose()) +
              r2 * kd * b2.cwiseProduct(n_t.transpose());
    // B o diag{X}^T only keeps B_mm X_mm
    quad.xi.diagonal() += (1.0 - r2) * (b1.diagonal().cwiseProduct(n_t.diagonal()) +
                                        ks * b1.diagonal().cwiseProduct(n_r.diagonal()) +
                                        kd * b2.diagonal().cwiseProduct(n_t.diagonal()));
    quad.xi = hermitian_part(quad.xi);

    // diag{P R} for P (m x k), R (k x m)
    auto diag_of_product = [](const CMat &p, const CMat &r) -> CVec {
        return p.cwiseProduct(r.transpose()).rowwise().sum();
    };
    const CMat chc = c.adjoint() * c;
    const CMat tail = hd * chc * hr.adjoint();                         // Hd C^H C Hr^H  (n_t x m)
    quad.omega = diag_of_product(htw, w.adjoint() * tail);              // Ht W W^H Hd C^H C Hr^H
    quad.psi = diag_of_product(ht, dw.cast<cdouble>().asDiagonal() * tail); // Ht diag{WW^H} Hd C^H C Hr^H
    quad.t_vec = diag_of_product(htw, w.adjoint() * hd * c_colnorm.cast<cdouble>().asDiagonal() * hr.adjoint());
    quad.v_vec = diag_of_product(htw, chr_h);                           // Ht W C Hr^H

    quad.q = quad.omega.conjugate() + ks * quad.psi.conjugate() + kd * quad.t_vec.conjugate() -
             quad.v_vec.conjugate();

    quad.offset = analytic_mse(probe, channels, config).total - phase_objective(quad, probe.phases, rho);
    return quad;
}

double phase_objective(const PhaseQuadratic &quad, const CVec &theta, double rho)
{
    return theta.dot(quad.xi * theta).real() + 2.0 * rho * theta.dot(quad.q).real();
}

double nmse(double mse, int d)
{
    if (d < 1)
        throw DomainError("nmse: stream count must be >= 1");
    return mse / static_cast<double>(d);
}

} // namespace rismse
