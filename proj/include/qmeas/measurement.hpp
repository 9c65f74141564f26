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

#ifndef QMEAS_MEASUREMENT_HPP
#define QMEAS_MEASUREMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/random.hpp"

namespace qmeas {

inline constexpr double kCompletenessTolerance = 1e-10;
/// Rounding slack allowed on either side of [0, 1] before a probability is an error.
inline constexpr double kProbabilitySlack = 1e-12;
/// Outcomes below this probability are treated as impossible.
inline constexpr double kZeroProbabilityThreshold = 1e-14;

/// Single-qubit pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
template <typename Scalar>
class PureState {
   public:
    PureState() = default;

    /// theta must lie in [0, pi]; phi is wrapped into [0, 2 pi).
    PureState(Scalar theta, Scalar phi) {
        const Scalar pi = std::numbers::pi_v<Scalar>;
        if (!std::isfinite(theta) || !std::isfinite(phi)) {
            throw DomainError("PureState: non-finite angle");
        }
        if (theta < 0 || theta > pi) {
            throw DomainError("PureState: theta outside [0, pi]");
        }
        phi = std::fmod(phi, 2 * pi);
        if (phi < 0) {
            phi += 2 * pi;
        }
        if (phi >= 2 * pi) {
            phi = 0;
        }
        theta_ = theta;
        phi_ = phi;
    }

    /// Global phase and normalization of the input are discarded.
    static PureState from_amplitudes(const Vector2c<Scalar> &amp) {
        require_finite(amp, "PureState::from_amplitudes");
        const Scalar r0 = std::abs(amp(0));
        const Scalar r1 = std::abs(amp(1));
        if (r0 == 0 && r1 == 0) {
            throw DomainError("PureState::from_amplitudes: zero vector");
        }
        const Scalar theta = 2 * std::atan2(r1, r0);
        const Scalar phi = (r0 > 0 && r1 > 0) ? std::arg(amp(1)) - std::arg(amp(0)) : Scalar(0);
        return PureState(std::min(theta, std::numbers::pi_v<Scalar>), phi);
    }

    Scalar theta() const { return theta_; }
    Scalar phi() const { return phi_; }

    Vector2c<Scalar> amplitudes() const {
        return Vector2c<Scalar>(Complex<Scalar>(std::cos(theta_ / 2)),
                                std::polar(std::sin(theta_ / 2), phi_));
    }

   private:
    Scalar theta_ = 0;
    Scalar phi_ = 0;
};

/// |<a|b>|, insensitive to global phase.
template <typename Scalar>
Scalar overlap(const PureState<Scalar> &a, const PureState<Scalar> &b) {
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

/// A measurement operator together with its canonical decomposition
/// kappa * U * diag(1, lambda) * V. Only (kappa, lambda, U) enter the
/// closed-form quantities: V just relabels the uniformly distributed states.
template <typename Scalar>
class MeasurementOperator {
   public:
    explicit MeasurementOperator(const Matrix2c<Scalar> &m) : matrix_(m), canonical_(svd2(m)) {
        if (canonical_.kappa > Scalar(1) + Scalar(kProbabilitySlack)) {
            throw DomainError("MeasurementOperator: operator norm exceeds 1");
        }
    }

    const Matrix2c<Scalar> &matrix() const { return matrix_; }
    const Svd2Result<Scalar> &canonical() const { return canonical_; }
    Scalar kappa() const { return canonical_.kappa; }
    Scalar lambda() const { return canonical_.lambda; }

   private:
    Matrix2c<Scalar> matrix_;
    Svd2Result<Scalar> canonical_;
};

template <typename Scalar>
struct CompletenessReport {
    Scalar deviation;  // max entrywise |sum M^dagger M - I|
    Scalar tolerance;
    bool complete;
};

template <typename Scalar>
CompletenessReport<Scalar> check_completeness(std::span<const MeasurementOperator<Scalar>> ops,
                                              Scalar tol = Scalar(kCompletenessTolerance)) {
    if (ops.empty()) {
        throw DomainError("check_completeness: empty operator list");
    }
    Matrix2c<Scalar> sum = -Matrix2c<Scalar>::Identity();
    for (const auto &op : ops) {
        sum += op.matrix().adjoint() * op.matrix();
    }
    const Scalar dev = max_abs(sum);
    return {dev, tol, dev <= tol};
}

/// An ordered, complete set of measurement operators with outcome labels.
template <typename Scalar>
class MeasurementSet {
   public:
    /// Labels default to "0", "1", ...; throws IncompleteSet if
    /// sum M^dagger M differs from I by more than tol in any entry.
    explicit MeasurementSet(std::vector<MeasurementOperator<Scalar>> ops, std::vector<std::string> labels = {},
                            Scalar tol = Scalar(kCompletenessTolerance))
        : ops_(std::move(ops)), labels_(std::move(labels)) {
        if (ops_.empty()) {
            throw DomainError("MeasurementSet: at least one operator is required");
        }
        if (labels_.empty()) {
            for (std::size_t i = 0; i < ops_.size(); ++i) {
                labels_.push_back(std::to_string(i));
            }
        }
        if (labels_.size() != ops_.size()) {
            throw DomainError("MeasurementSet: label count does not match operator count");
        }
        const auto report = check_completeness(std::span<const MeasurementOperator<Scalar>>(ops_), tol);
        if (!report.complete) {
            throw IncompleteSet("MeasurementSet: sum of M^dagger M deviates from identity by " +
                                    std::to_string(static_cast<double>(report.deviation)),
                                static_cast<double>(report.deviation));
        }
    }

    const std::vector<MeasurementOperator<Scalar>> &operators() const { return ops_; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::size_t size() const { return ops_.size(); }
    const MeasurementOperator<Scalar> &operator[](std::size_t i) const { return ops_[i]; }

   private:
    std::vector<MeasurementOperator<Scalar>> ops_;
    std::vector<std::string> labels_;
};

template <typename Scalar>
struct MeasurementRecord {
    std::size_t outcome;
    std::string label;
    Scalar probability;
    PureState<Scalar> post_state;
    PureState<Scalar> pre_state;
};

namespace detail {

template <typename Scalar>
Scalar clamp_probability(Scalar p) {
    const Scalar slack(kProbabilitySlack);
    if (!(p >= -slack && p <= 1 + slack)) {
        throw DomainError("probability outside [0, 1] beyond rounding slack");
    }
    return std::clamp(p, Scalar(0), Scalar(1));
}

}  // namespace detail

/// <psi| M^dagger M |psi>.
template <typename Scalar>
Scalar outcome_probability(const MeasurementOperator<Scalar> &op, const PureState<Scalar> &psi) {
    return detail::clamp_probability((op.matrix() * psi.amplitudes()).squaredNorm());
}

/// <psi| D^2 |psi> for D = diag(1, lambda), i.e. p(m|psi) / kappa^2 in the
/// frame where V = I.
template <typename Scalar>
Scalar q_value(Scalar lambda, Scalar theta) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw DomainError("q_value: lambda outside [0, 1]");
    }
    if (!(theta >= 0 && theta <= std::numbers::pi_v<Scalar>)) {
        throw DomainError("q_value: theta outside [0, pi]");
    }
    const Scalar c = std::cos(theta / 2);
    const Scalar s = std::sin(theta / 2);
    return c * c + lambda * lambda * s * s;
}

template <typename Scalar>
PureState<Scalar> post_measurement_state(const MeasurementOperator<Scalar> &op, const PureState<Scalar> &psi) {
    const Vector2c<Scalar> out = op.matrix() * psi.amplitudes();
    const Scalar p = out.squaredNorm();
    if (!(p > Scalar(kZeroProbabilityThreshold))) {
        throw ZeroProbability("post_measurement_state: outcome has zero probability on this state");
    }
    return PureState<Scalar>::from_amplitudes(out / std::sqrt(p));
}

/// Draws one outcome with the Born-rule probabilities of the set. The
/// probabilities are renormalized by their sum to absorb rounding.
template <typename Scalar>
MeasurementRecord<Scalar> sample_outcome(const MeasurementSet<Scalar> &set, const PureState<Scalar> &psi,
                                         Rng &rng) {
    std::vector<Scalar> probs;
    probs.reserve(set.size());
    Scalar total = 0;
    for (const auto &op : set.operators()) {
        probs.push_back(outcome_probability(op, psi));
        total += probs.back();
    }
    const Scalar target = uniform01<Scalar>(rng) * total;
    std::size_t pick = set.size() - 1;
    Scalar acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (target < acc) {
            pick = i;
            break;
        }
    }
    // The fallback index can only be hit through rounding; skip zero-weight tail entries.
    while (probs[pick] <= Scalar(kZeroProbabilityThreshold) && pick > 0) {
        --pick;
    }
    return {pick, set.labels()[pick], probs[pick], post_measurement_state(set[pick], psi), psi};
}

/// {kappa0 * diag(1, lambda0), diag(sqrt(1 - kappa0^2), sqrt(1 - kappa0^2 lambda0^2))}.
template <typename Scalar>
MeasurementSet<Scalar> two_outcome_family(Scalar lambda0, Scalar kappa0) {
    if (!(lambda0 >= 0 && lambda0 <= 1)) {
        throw InvalidStrength("two_outcome_family: lambda0 outside [0, 1]");
    }
    if (!(kappa0 > 0 && kappa0 <= 1)) {
        throw InvalidStrength("two_outcome_family: kappa0 outside (0, 1]");
    }
    const Scalar k2 = kappa0 * kappa0;
    const Scalar d0 = std::sqrt(1 - k2);
    const Scalar d1 = std::sqrt(std::max(Scalar(0), 1 - k2 * lambda0 * lambda0));
    if (!(std::max(d0, d1) >= Scalar(kZeroOperatorThreshold))) {
        throw InvalidStrength("two_outcome_family: complementary operator vanishes (lambda0 = kappa0 = 1)");
    }
    Matrix2c<Scalar> m0 = Matrix2c<Scalar>::Zero();
    m0(0, 0) = kappa0;
    m0(1, 1) = kappa0 * lambda0;
    Matrix2c<Scalar> m1 = Matrix2c<Scalar>::Zero();
    m1(0, 0) = d0;
    m1(1, 1) = d1;
    return MeasurementSet<Scalar>({MeasurementOperator<Scalar>(m0), MeasurementOperator<Scalar>(m1)});
}

}  // namespace qmeas

#endif  // QMEAS_MEASUREMENT_HPP
