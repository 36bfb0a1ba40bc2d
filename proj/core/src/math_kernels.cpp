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

#include "rismse/math_kernels.hpp"
#include "rismse/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rismse
{

namespace
{

// Hankel expansion of exp(-x) sqrt(2 pi x) I_nu(x), truncated once terms stop shrinking
double hankel_series(double order, double x)
{
    const double mu = 4.0 * order * order;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k)
    {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term))
            break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace

double bessel_i_ratio(double x)
{
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("bessel_i_ratio: concentration must be finite and nonnegative, got " + std::to_string(x));
    if (x == 0.0)
        return 0.0;

    if (x > 2000.0)
        return hankel_series(1.0, x) / hankel_series(0.0, x);

    // I1/I0 = 1 / (2/x + 1 / (4/x + 1 / (6/x + ...)))
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double f = tiny, c = f, d = 0.0;
    for (int k = 1; k < 100000; ++k)
    {
        const double b = 2.0 * k / x;
        d = b + d;
        d = (d == 0.0) ? 1.0 / tiny : 1.0 / d;
        c = b + 1.0 / c;
        if (c == 0.0)
            c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < eps)
            break;
    }
    return f;
}

CMat hermitian_part(const CMat &a)
{
    return 0.5 * (a + a.adjoint());
}

HermitianEigen hermitian_eig(const CMat &a)
{
    if (a.rows() != a.cols())
        throw ShapeError("hermitian_eig: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));

    Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw NumericError("hermitian_eig", "eigen-solver did not converge");

    // Eigen returns ascending order
    HermitianEigen out;
    out.values = solver.eigenvalues().reverse();
    out.basis = solver.eigenvectors().rowwise().reverse();
    return out;
}

double max_eigenvalue(const CMat &a)
{
    if (a.rows() != a.cols())
        throw ShapeError("max_eigenvalue: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    if (a.size() == 0)
        throw ShapeError("max_eigenvalue: empty matrix");

    Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("max_eigenvalue", "eigen-solver did not converge");
    return solver.eigenvalues().maxCoeff();
}

CMat diag_part(const CMat &a)
{
    return diag_embed(diag_vector(a));
}

CVec diag_vector(const CMat &a)
{
    return a.diagonal();
}

CMat diag_embed(const CVec &v)
{
    CMat out = CMat::Zero(v.size(), v.size());
    out.diagonal() = v;
    return out;
}

CMat hadamard(const CMat &a, const CMat &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("hadamard: operand shapes differ");
    return a.cwiseProduct(b);
}

double rel_frobenius(const CMat &a, const CMat &b)
{
    const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
    return (a - b).norm() / denom;
}

} // namespace rismse
