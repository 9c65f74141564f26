// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEAS_LINALG_HPP
#define QMEAS_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>

#include "qmeas/errors.hpp"

namespace qmeas {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kReconstructionTolerance = 1e-12;
/// svd2 rejects matrices whose largest singular value is below this.
inline constexpr double kZeroOperatorThreshold = 1e-14;

/// Largest entrywise modulus, the ‖·‖_max norm used for all matrix tolerances.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived> &m, const char *what) {
    if (!m.allFinite()) {
        throw DomainError(std::string(what) + ": non-finite entry");
    }
}

template <typename Scalar>
Scalar unitarity_deviation(const Matrix2c<Scalar> &u) {
    return max_abs(Matrix2c<Scalar>(u * u.adjoint() - Matrix2c<Scalar>::Identity()));
}

template <typename Scalar>
bool is_unitary(const Matrix2c<Scalar> &u, Scalar tol = Scalar(kUnitarityTolerance)) {
    return u.allFinite() && unitarity_deviation(u) <= tol;
}

/// m = kappa * u * diag(1, lambda) * v with u, v unitary, kappa the largest
/// singular value and lambda the ratio of the smaller to the larger one.
template <typename Scalar>
struct Svd2Result {
    Scalar kappa;
    Scalar lambda;
    Matrix2c<Scalar> u;
    Matrix2c<Scalar> v;

    Matrix2c<Scalar> diagonal() const {
        Matrix2c<Scalar> d = Matrix2c<Scalar>::Zero();
        d(0, 0) = Scalar(1);
        d(1, 1) = lambda;
        return d;
    }

    Matrix2c<Scalar> reconstruct() const { return kappa * u * diagonal() * v; }
};

namespace detail {

// Orthonormal complement of a unit 2-vector; [x, complement(x)] has det 1.
template <typename Scalar>
Vector2c<Scalar> complement(const Vector2c<Scalar> &x) {
    return Vector2c<Scalar>(-std::conj(x(1)), std::conj(x(0)));
}

// Rotate each column of u so its leading entry (the second one if the first
// vanishes) is real and positive, compensating in the matching row of v. This
// removes the column-phase freedom of the decomposition when lambda < 1.
template <typename Scalar>
void fix_column_phases(Matrix2c<Scalar> &u, Matrix2c<Scalar> &v) {
    for (int j = 0; j < 2; ++j) {
        const int ref = std::abs(u(0, j)) > Scalar(1e-8) ? 0 : 1;
        const Complex<Scalar> phase = u(ref, j) / std::abs(u(ref, j));
        u.col(j) *= std::conj(phase);
        v.row(j) *= phase;
    }
}

}  // namespace detail

/// Closed-form singular-value decomposition of a 2x2 complex matrix.
///
/// The right singular vectors are the eigenvectors of the Hermitian m^dagger m,
/// found from its characteristic quadratic. The left vectors follow as
/// m v_i / sigma_i, except that the second one is built as the orthogonal
/// complement of the first (Gram-Schmidt), carrying the phase of m v_2. That
/// keeps u exactly unitary when sigma_2 is tiny or zero.
///
/// If the singular values coincide, v = I and u = m / sigma.
template <typename Scalar>
Svd2Result<Scalar> svd2(const Matrix2c<Scalar> &m) {
    using std::abs;
    using std::sqrt;
    require_finite(m, "svd2");

    const Matrix2c<Scalar> h = m.adjoint() * m;
    const Scalar a = h(0, 0).real();
    const Scalar d = h(1, 1).real();
    const Complex<Scalar> b = h(0, 1);
    const Scalar mean = (a + d) / 2;
    const Scalar half_diff = (a - d) / 2;
    const Scalar radius = std::hypot(half_diff, abs(b));

    if (!(sqrt(mean + radius) >= Scalar(kZeroOperatorThreshold))) {
        throw ZeroOperator("svd2: largest singular value below threshold");
    }

    Svd2Result<Scalar> out;
    if (radius <= 8 * std::numeric_limits<Scalar>::epsilon() * mean) {
        out.kappa = sqrt(mean);
        out.lambda = Scalar(1);
        out.u = m / out.kappa;
        out.v = Matrix2c<Scalar>::Identity();
        return out;
    }

    // Eigenvector for the larger eigenvalue mean + radius, picking the row of
    // (h - mu I) v = 0 that avoids cancellation.
    Vector2c<Scalar> v1;
    if (half_diff >= 0) {
        v1 << Complex<Scalar>(radius + half_diff), std::conj(b);
    } else {
        v1 << b, Complex<Scalar>(radius - half_diff);
    }
    v1.normalize();
    const Vector2c<Scalar> v2 = detail::complement(v1);

    const Vector2c<Scalar> y1 = m * v1;
    out.kappa = y1.norm();
    const Vector2c<Scalar> u1 = y1 / out.kappa;
    const Vector2c<Scalar> w = detail::complement(u1);
    const Complex<Scalar> z = w.dot(m * v2);
    const Scalar sigma2 = abs(z);
    const Vector2c<Scalar> u2 = sigma2 > 0 ? Vector2c<Scalar>((z / sigma2) * w) : w;

    out.lambda = std::min(sigma2 / out.kappa, Scalar(1));
    out.u.col(0) = u1;
    out.u.col(1) = u2;
    out.v.row(0) = v1.adjoint();
    out.v.row(1) = v2.adjoint();
    detail::fix_column_phases(out.u, out.v);
    return out;
}

/// Parameters of u = e^{i alpha} [[e^{i beta} cos g, -e^{i delta} sin g],
///                                [e^{-i delta} sin g, e^{-i beta} cos g]].
template <typename Scalar>
struct Su2Params {
    Scalar alpha;
    Scalar beta;
    Scalar gamma;
    Scalar delta;
};

template <typename Scalar>
Matrix2c<Scalar> su2_matrix(const Su2Params<Scalar> &p) {
    using C = Complex<Scalar>;
    const Scalar c = std::cos(p.gamma);
    const Scalar s = std::sin(p.gamma);
    Matrix2c<Scalar> w;
    w << std::polar(c, p.beta), -std::polar(s, p.delta),  //
        std::polar(s, -p.delta), std::polar(c, -p.beta);
    return C(std::polar(Scalar(1), p.alpha)) * w;
}

/// Extracts (alpha, beta, gamma, delta) with gamma in [0, pi/2].
///
/// alpha is half the argument of det(u), i.e. the argument of its principal
/// square root. The other root would shift alpha by pi and flip the signs of
/// both diagonal and off-diagonal entries, which amounts to beta, delta -> +pi;
/// cos(2 beta) is unaffected. beta is 0 when cos(gamma) vanishes and delta is
/// 0 when sin(gamma) vanishes.
template <typename Scalar>
Su2Params<Scalar> su2_params(const Matrix2c<Scalar> &u) {
    if (!is_unitary(u)) {
        throw NotUnitary("su2_params: matrix is not unitary within tolerance");
    }
    const Scalar alpha = std::arg(u.determinant()) / 2;
    const Matrix2c<Scalar> w = std::polar(Scalar(1), -alpha) * u;
    const Scalar c = std::abs(w(0, 0));
    const Scalar s = std::abs(w(1, 0));
    const Scalar negligible(1e-14);

    Su2Params<Scalar> p;
    p.alpha = alpha;
    p.gamma = std::atan2(s, c);
    p.beta = c > negligible ? std::arg(w(0, 0)) : Scalar(0);
    p.delta = s > negligible ? -std::arg(w(1, 0)) : Scalar(0);
    return p;
}

}  // namespace qmeas

#endif  // QMEAS_LINALG_HPP
