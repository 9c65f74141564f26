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

#ifndef QMEAS_REVERSAL_HPP
#define QMEAS_REVERSAL_HPP

#include <algorithm>
#include <cstddef>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/random.hpp"

namespace qmeas {

/// Below this singular-value ratio an operator is treated as singular.
inline constexpr double kIrreversibleLambda = 1e-14;

/// Preferred-outcome operator eta * M^{-1} of a reversing measurement.
template <typename Scalar>
struct ReversingMeasurement {
    Complex<Scalar> eta;
    Matrix2c<Scalar> matrix;
    MeasurementOperator<Scalar> source;
};

template <typename Scalar>
struct ReversalStats {
    std::size_t trials = 0;
    std::size_t successes = 0;
    Scalar empirical_rate = 0;
    Scalar predicted_rate = 0;
    /// Smallest |<psi|psi_rev>| over successful trials; 1 if none succeeded.
    Scalar recovered_fidelity_min = 1;
};

namespace detail {

template <typename Scalar>
void require_reversible(const MeasurementOperator<Scalar> &op, const char *where) {
    if (!(op.lambda() >= Scalar(kIrreversibleLambda))) {
        throw Irreversible(std::string(where) + ": lambda = 0, the measurement is not physically reversible");
    }
}

}  // namespace detail

/// Reversing operator with the largest admissible |eta| = kappa * lambda,
/// taken real and positive. With M = kappa U D V this is V^dagger diag(lambda, 1) U^dagger,
/// whose largest singular value is exactly 1.
template <typename Scalar>
ReversingMeasurement<Scalar> optimal_reversing(const MeasurementOperator<Scalar> &op) {
    detail::require_reversible(op, "optimal_reversing");
    const auto &c = op.canonical();
    Matrix2c<Scalar> inv_d = Matrix2c<Scalar>::Zero();
    inv_d(0, 0) = c.lambda;
    inv_d(1, 1) = Scalar(1);
    return {Complex<Scalar>(c.kappa * c.lambda), c.v.adjoint() * inv_d * c.u.adjoint(), op};
}

/// Maximal success probability of reversing outcome `op` on state psi:
/// kappa^2 lambda^2 / p(m|psi), which equals lambda^2 / q.
template <typename Scalar>
Scalar reversal_success_probability(const MeasurementOperator<Scalar> &op, const PureState<Scalar> &psi) {
    detail::require_reversible(op, "reversal_success_probability");
    const Scalar k2l2 = op.kappa() * op.kappa() * op.lambda() * op.lambda();
    return std::min(Scalar(1), k2l2 / outcome_probability(op, psi));
}

/// Measure-then-reverse protocol, post-selected on outcome `op`. The reversal
/// succeeds with probability |eta|^2 / p(m|psi); on success the reversing
/// operator is applied to the post-measurement state and the overlap with psi
/// is recorded.
template <typename Scalar>
ReversalStats<Scalar> simulate_reversal(const MeasurementOperator<Scalar> &op, const PureState<Scalar> &psi,
                                        std::size_t trials, Rng &rng) {
    detail::require_reversible(op, "simulate_reversal");
    if (trials == 0) {
        throw DomainError("simulate_reversal: trials must be at least 1");
    }
    const auto rev = optimal_reversing(op);
    const Vector2c<Scalar> pre = psi.amplitudes();
    const Vector2c<Scalar> measured = op.matrix() * pre;
    const Scalar p_meas = measured.squaredNorm();
    const Vector2c<Scalar> post = measured / std::sqrt(p_meas);
    const Scalar p_rev = std::min(Scalar(1), std::norm(rev.eta) / p_meas);

    ReversalStats<Scalar> stats;
    stats.trials = trials;
    stats.predicted_rate = reversal_success_probability(op, psi);
    for (std::size_t t = 0; t < trials; ++t) {
        if (!(uniform01<Scalar>(rng) < p_rev)) {
            continue;
        }
        ++stats.successes;
        const Vector2c<Scalar> restored = (rev.matrix * post).normalized();
        stats.recovered_fidelity_min = std::min(stats.recovered_fidelity_min, std::abs(pre.dot(restored)));
    }
    stats.empirical_rate = static_cast<Scalar>(stats.successes) / static_cast<Scalar>(trials);
    return stats;
}

}  // namespace qmeas

#endif  // QMEAS_REVERSAL_HPP
