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

#ifndef QMEAS_GAUSS_LEGENDRE_HPP
#define QMEAS_GAUSS_LEGENDRE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace qmeas {

template <typename Scalar>
struct QuadratureRule {
    std::vector<Scalar> nodes;
    std::vector<Scalar> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
/// Roots of P_n by Newton iteration from the Tricomi initial guesses.
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(std::size_t n) {
    QuadratureRule<Scalar> rule;
    rule.nodes.assign(n, Scalar(0));
    rule.weights.assign(n, Scalar(0));
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar tol = 4 * std::numeric_limits<Scalar>::epsilon();
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Scalar p0 = 1;
            Scalar p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const Scalar pk = ((2 * Scalar(k) - 1) * x * p1 - (Scalar(k) - 1) * p0) / Scalar(k);
                p0 = p1;
                p1 = pk;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = Scalar(n) * (x * p1 - p0) / (x * x - 1);
            const Scalar dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= tol) {
                break;
            }
        }
        const Scalar w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace qmeas

#endif  // QMEAS_GAUSS_LEGENDRE_HPP
