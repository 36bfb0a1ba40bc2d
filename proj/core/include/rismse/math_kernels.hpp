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

#ifndef RISMSE_MATH_KERNELS_HPP
#define RISMSE_MATH_KERNELS_HPP

#include <Eigen/Dense>
#include <complex>

namespace rismse
{

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Ratio I1(x) / I0(x) of modified Bessel functions of the first kind.
///
/// This is the circular mean resultant length of a zero-mean Von Mises variable with
/// concentration `x`. Evaluated as a Gauss continued fraction (modified Lentz) for moderate
/// arguments and by the ratio of the Hankel asymptotic series for large ones, so the
/// individual functions are never formed and nothing overflows.
/// Throws DomainError for negative or non-finite `x`.
double bessel_i_ratio(double concentration);

/// Eigen-decomposition A = basis * diag(values) * basis^H of a Hermitian matrix,
/// with eigenvalues sorted in descending order.
struct HermitianEigen
{
    CMat basis;
    RVec values;
};

/// Symmetrizes `a` as (A + A^H) / 2 before factoring. Throws ShapeError when `a` is not square.
HermitianEigen hermitian_eig(const CMat &a);

/// Largest eigenvalue of a Hermitian matrix (symmetrized first).
double max_eigenvalue(const CMat &a);

/// (A + A^H) / 2
CMat hermitian_part(const CMat &a);

// diag{A}: keeps the main diagonal, zeros everything else
CMat diag_part(const CMat &a);

// Main diagonal as a vector
CVec diag_vector(const CMat &a);

// Square matrix with `v` on the diagonal
CMat diag_embed(const CVec &v);

// Elementwise product of two equally sized matrices
CMat hadamard(const CMat &a, const CMat &b);

// Relative Frobenius distance |a - b|_F / max(|b|_F, tiny)
double rel_frobenius(const CMat &a, const CMat &b);

} // namespace rismse

#endif
