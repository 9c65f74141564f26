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

#ifndef QMEAS_ORACLE_HPP
#define QMEAS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

#include "qmeas/errors.hpp"
#include "qmeas/gauss_legendre.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/random.hpp"
#include "qmeas/reversal.hpp"

// Direct numerical evaluation of the Bloch-sphere averages that define the
// information gain, fidelity and reversibility of a single outcome. Nothing in
// here calls the closed forms of analytics.hpp.

namespace qmeas {

enum class EstimateMethod { MonteCarlo, Quadrature };

template <typename Scalar>
struct Estimate {
    Scalar value = 0;
    Scalar std_error = 0;        // delta method; 0 for quadrature
    Scalar jackknife_error = 0;  // 100-block jackknife; 0 for quadrature
    std::size_t samples = 0;
    EstimateMethod method = EstimateMethod::MonteCarlo;
};

inline constexpr std::size_t kJackknifeBlocks = 100;

/// Uniform on the sphere: phi uniform on [0, 2 pi), cos(theta) uniform on [-1, 1].
template <typename Scalar>
PureState<Scalar> sample_bloch_uniform(Rng &rng) {
    const Scalar u = uniform01<Scalar>(rng);
    const Scalar v = uniform01<Scalar>(rng);
    const Scalar cos_theta = std::clamp(1 - 2 * u, Scalar(-1), Scalar(1));
    return PureState<Scalar>(std::acos(cos_theta), 2 * std::numbers::pi_v<Scalar> * v);
}

namespace detail {

// Ratio-type estimator g(mean x, mean y) with delta-method and jackknife errors.
// `draw` returns the pair (x, y) for one state; `g` returns {value, dg/dA, dg/dB}.
template <typename Scalar, typename Draw, typename G>
Estimate<Scalar> sphere_average_estimate(std::size_t n, Rng &rng, Draw &&draw, G &&g) {
    if (n < 2) {
        throw DomainError("Monte Carlo estimate needs at least 2 samples");
    }
    const std::size_t blocks = std::min(n, kJackknifeBlocks);
    std::vector<Scalar> block_x(blocks, 0), block_y(blocks, 0);
    std::vector<std::size_t> block_n(blocks, 0);
    // Shifted second moments about the first sample keep the variance stable.
    Scalar sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    Scalar x0 = 0, y0 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = draw(sample_bloch_uniform<Scalar>(rng));
        if (i == 0) {
            x0 = x;
            y0 = y;
        }
        const std::size_t b = i * blocks / n;
        block_x[b] += x;
        block_y[b] += y;
        ++block_n[b];
        const Scalar dx = x - x0, dy = y - y0;
        sx += dx;
        sy += dy;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const Scalar nn = static_cast<Scalar>(n);
    const Scalar mean_x = x0 + sx / nn;
    const Scalar mean_y = y0 + sy / nn;
    if (!(mean_y > 0)) {
        throw DegenerateSample("sample average of q is not positive");
    }
    const Scalar var_x = std::max(Scalar(0), (sxx - sx * sx / nn) / (nn - 1));
    const Scalar var_y = std::max(Scalar(0), (syy - sy * sy / nn) / (nn - 1));
    const Scalar cov = (sxy - sx * sy / nn) / (nn - 1);

    const auto [value, ga, gb] = g(mean_x, mean_y);
    const Scalar var_g = (ga * ga * var_x + 2 * ga * gb * cov + gb * gb * var_y) / nn;

    Scalar total_x = 0, total_y = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        total_x += block_x[b];
        total_y += block_y[b];
    }
    std::vector<Scalar> loo(blocks);
    Scalar loo_mean = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const Scalar m = nn - static_cast<Scalar>(block_n[b]);
        loo[b] = std::get<0>(g((total_x - block_x[b]) / m, (total_y - block_y[b]) / m));
        loo_mean += loo[b];
    }
    loo_mean /= static_cast<Scalar>(blocks);
    Scalar jk = 0;
    for (const Scalar v : loo) {
        jk += (v - loo_mean) * (v - loo_mean);
    }
    jk *= static_cast<Scalar>(blocks - 1) / static_cast<Scalar>(blocks);

    Estimate<Scalar> est;
    est.value = value;
    est.std_error = std::sqrt(std::max(Scalar(0), var_g));
    est.jackknife_error = std::sqrt(jk);
    est.samples = n;
    est.method = EstimateMethod::MonteCarlo;
    return est;
}

template <typename Scalar>
Scalar x_log2_x(Scalar x) {
    return x > 0 ? x * std::log2(x) : Scalar(0);
}

template <typename Scalar>
Matrix2c<Scalar> relabeled_operator(const MeasurementOperator<Scalar> &op) {
    // U * diag(1, lambda): the operator with kappa and V dropped.
    return op.canonical().u * op.canonical().diagonal();
}

template <typename Scalar>
void require_nodes(std::size_t nodes) {
    if (nodes < 8) {
        throw DomainError("quadrature needs at least 8 nodes");
    }
}

}  // namespace detail

/// I(m) = [avg(q log2 q) - avg(q) log2 avg(q)] / avg(q), with q = |M psi|^2 / kappa^2.
template <typename Scalar>
Estimate<Scalar> estimate_information(const MeasurementOperator<Scalar> &op, std::size_t n, Rng &rng) {
    const Matrix2c<Scalar> m = op.matrix() / op.kappa();
    auto draw = [&](const PureState<Scalar> &psi) {
        const Scalar q = (m * psi.amplitudes()).squaredNorm();
        return std::pair<Scalar, Scalar>(detail::x_log2_x(q), q);
    };
    auto g = [](Scalar a, Scalar b) {
        const Scalar ln2 = std::numbers::ln2_v<Scalar>;
        return std::tuple<Scalar, Scalar, Scalar>(a / b - std::log2(b), 1 / b, -a / (b * b) - 1 / (b * ln2));
    };
    return detail::sphere_average_estimate<Scalar>(n, rng, draw, g);
}

/// F(m) = avg |<psi| U D |psi>|^2 / avg <psi|D^2|psi>, from the canonical U and D.
template <typename Scalar>
Estimate<Scalar> estimate_fidelity(const MeasurementOperator<Scalar> &op, std::size_t n, Rng &rng) {
    const Matrix2c<Scalar> ud = detail::relabeled_operator(op);
    const Scalar l2 = op.lambda() * op.lambda();
    auto draw = [&](const PureState<Scalar> &psi) {
        const Vector2c<Scalar> a = psi.amplitudes();
        const Scalar q = std::norm(a(0)) + l2 * std::norm(a(1));
        return std::pair<Scalar, Scalar>(std::norm(a.dot(ud * a)), q);
    };
    auto g = [](Scalar a, Scalar b) { return std::tuple<Scalar, Scalar, Scalar>(a / b, 1 / b, -a / (b * b)); };
    return detail::sphere_average_estimate<Scalar>(n, rng, draw, g);
}

/// R(m) = lambda^2 / avg(q), q = |M psi|^2 / kappa^2.
template <typename Scalar>
Estimate<Scalar> estimate_reversibility(const MeasurementOperator<Scalar> &op, std::size_t n, Rng &rng) {
    detail::require_reversible(op, "estimate_reversibility");
    const Matrix2c<Scalar> m = op.matrix() / op.kappa();
    const Scalar l2 = op.lambda() * op.lambda();
    auto draw = [&](const PureState<Scalar> &psi) {
        return std::pair<Scalar, Scalar>(Scalar(0), (m * psi.amplitudes()).squaredNorm());
    };
    auto g = [l2](Scalar, Scalar b) { return std::tuple<Scalar, Scalar, Scalar>(l2 / b, Scalar(0), -l2 / (b * b)); };
    return detail::sphere_average_estimate<Scalar>(n, rng, draw, g);
}

/// Information gain by quadrature. q = lambda^2 + (1 - lambda^2)(1 + u)/2 is linear
/// in u = cos(theta), so the average over u equals (1/(1 - lambda^2)) * integral of
/// f(q) dq on [lambda^2, 1]. The Gauss-Legendre nodes are placed in s = ln q, where
/// q log q becomes the entire function s e^{2s}; the log endpoint singularity at
/// lambda = 0 then costs no accuracy. For lambda < 1e-6 the lambda = 0 integrand
/// is used with the lower limit cut at s = -40.
template <typename Scalar>
Estimate<Scalar> quadrature_information(const MeasurementOperator<Scalar> &op, std::size_t nodes) {
    detail::require_nodes<Scalar>(nodes);
    const Scalar lambda = op.lambda();
    Estimate<Scalar> est;
    est.method = EstimateMethod::Quadrature;
    est.samples = nodes;
    if (!(lambda < 1)) {
        est.value = 0;  // q == 1 everywhere
        return est;
    }
    const Scalar s_lo = lambda < Scalar(1e-6) ? Scalar(-40) : 2 * std::log(lambda);
    const Scalar width = -std::expm1(s_lo);  // 1 - q_min
    const auto rule = gauss_legendre<Scalar>(nodes);
    const Scalar half = -s_lo / 2;
    Scalar a = 0, b = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const Scalar s = half * rule.nodes[i] + s_lo / 2;
        const Scalar q = std::exp(s);
        const Scalar w = rule.weights[i] * half * q;  // dq = q ds
        a += w * detail::x_log2_x(q);
        b += w * q;
    }
    a /= width;
    b /= width;
    est.value = a / b - std::log2(b);
    return est;
}

/// Fidelity by Gauss-Legendre in u = cos(theta) times a uniform periodic
/// trapezoid rule with 2 * nodes points in phi.
template <typename Scalar>
Estimate<Scalar> quadrature_fidelity(const MeasurementOperator<Scalar> &op, std::size_t nodes) {
    detail::require_nodes<Scalar>(nodes);
    const Matrix2c<Scalar> ud = detail::relabeled_operator(op);
    const Scalar l2 = op.lambda() * op.lambda();
    const auto rule = gauss_legendre<Scalar>(nodes);
    const std::size_t phi_nodes = 2 * nodes;
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    Scalar a = 0, b = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const Scalar theta = std::acos(rule.nodes[i]);
        Scalar row_a = 0, row_b = 0;
        for (std::size_t k = 0; k < phi_nodes; ++k) {
            const PureState<Scalar> psi(theta, two_pi * Scalar(k) / Scalar(phi_nodes));
            const Vector2c<Scalar> amp = psi.amplitudes();
            row_a += std::norm(amp.dot(ud * amp));
            row_b += std::norm(amp(0)) + l2 * std::norm(amp(1));
        }
        a += rule.weights[i] * row_a;
        b += rule.weights[i] * row_b;
    }
    // The normalizations (1/2 for u, 1/phi_nodes for phi) cancel in the ratio.
    Estimate<Scalar> est;
    est.value = a / b;
    est.samples = nodes * phi_nodes;
    est.method = EstimateMethod::Quadrature;
    return est;
}

/// Reversibility lambda^2 / avg(q) with avg(q) by Gauss-Legendre in u.
template <typename Scalar>
Estimate<Scalar> quadrature_reversibility(const MeasurementOperator<Scalar> &op, std::size_t nodes) {
    detail::require_nodes<Scalar>(nodes);
    detail::require_reversible(op, "quadrature_reversibility");
    const Scalar l2 = op.lambda() * op.lambda();
    const auto rule = gauss_legendre<Scalar>(nodes);
    Scalar b = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const Scalar u = rule.nodes[i];
        b += rule.weights[i] * ((1 + u) / 2 + l2 * (1 - u) / 2);
    }
    b /= 2;
    Estimate<Scalar> est;
    est.value = l2 / b;
    est.samples = nodes;
    est.method = EstimateMethod::Quadrature;
    return est;
}

}  // namespace qmeas

#endif  // QMEAS_ORACLE_HPP
