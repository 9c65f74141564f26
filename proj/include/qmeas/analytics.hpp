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

#ifndef QMEAS_ANALYTICS_HPP
#define QMEAS_ANALYTICS_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qmeas/errors.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"

namespace qmeas {

/// All single-outcome quantities below depend on the measurement operator only
/// through the singular-value ratio lambda (fidelity also through the U factor).
/// Information is in bits.

/// For lambda > 1 - kSeriesCrossover the information gain (and E_F, which
/// divides it by (1 - lambda)^2) are evaluated from their Taylor series in
/// (1 - lambda); the direct formula is a 0/0 cancellation there.
inline constexpr double kSeriesCrossover = 0.02;

namespace detail {

template <typename Scalar>
void require_unit_interval(Scalar lambda, const char *where) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw DomainError(std::string(where) + ": lambda outside [0, 1]");
    }
}

// ln2 * I(1 - e) = sum_k c_k e^k, k = 2..13.
template <typename Scalar>
constexpr std::array<Scalar, 12> info_series_coefficients() {
    return {Scalar(1) / 6,         Scalar(1) / 6,          Scalar(7) / 120,       Scalar(-1) / 20,
            Scalar(-2) / 21,       Scalar(-13) / 168,      Scalar(-629) / 20160,  Scalar(43) / 5040,
            Scalar(71) / 2772,     Scalar(71) / 3168,      Scalar(58441) / 5765760, Scalar(-367) / 411840};
}

// ln2 * I(1 - e) / e^2, by Horner.
template <typename Scalar>
Scalar info_series_over_e2(Scalar e) {
    constexpr auto c = info_series_coefficients<Scalar>();
    Scalar acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * e + *it;
    }
    return acc;
}

template <typename Scalar>
Scalar info_at_zero() {
    return 1 - 1 / (2 * std::numbers::ln2_v<Scalar>);
}

}  // namespace detail

/// I = 1 - 1/(2 ln 2) - lambda^4/(1 - lambda^4) log2(lambda^2) - log2(1 + lambda^2).
template <typename Scalar>
Scalar information_gain(Scalar lambda) {
    detail::require_unit_interval(lambda, "information_gain");
    if (lambda == 0) {
        return detail::info_at_zero<Scalar>();
    }
    const Scalar e = 1 - lambda;
    if (e < Scalar(kSeriesCrossover)) {
        return e * e * detail::info_series_over_e2(e) / std::numbers::ln2_v<Scalar>;
    }
    const Scalar x = lambda * lambda;
    const Scalar one_minus_x2 = (1 - lambda) * (1 + lambda) * (1 + x);
    return detail::info_at_zero<Scalar>() - x * x / one_minus_x2 * std::log2(x) -
           std::log1p(x) / std::numbers::ln2_v<Scalar>;
}

/// Fidelity for U with Euler parameters (beta, gamma):
/// 1/3 + (1/3) [1 + 2 lambda/(1 + lambda^2) cos 2 beta] cos^2 gamma.
template <typename Scalar>
Scalar fidelity_closed(Scalar lambda, Scalar beta, Scalar gamma) {
    detail::require_unit_interval(lambda, "fidelity_closed");
    if (!std::isfinite(beta) || !std::isfinite(gamma)) {
        throw DomainError("fidelity_closed: non-finite angle");
    }
    const Scalar cg = std::cos(gamma);
    return Scalar(1) / 3 + (1 + 2 * lambda / (1 + lambda * lambda) * std::cos(2 * beta)) * cg * cg / 3;
}

/// Upper bound of the fidelity over U, attained at U = I.
template <typename Scalar>
Scalar optimal_fidelity(Scalar lambda) {
    detail::require_unit_interval(lambda, "optimal_fidelity");
    return Scalar(2) / 3 * (1 + lambda / (1 + lambda * lambda));
}

template <typename Scalar>
Scalar reversibility(Scalar lambda) {
    detail::require_unit_interval(lambda, "reversibility");
    const Scalar x = lambda * lambda;
    return 2 * x / (1 + x);
}

/// E_F = I / (1 - F_opt), using 1 - F_opt = (1 - lambda)^2 / (3 (1 + lambda^2)).
/// Tends to 1/ln 2 as lambda -> 1.
template <typename Scalar>
Scalar efficiency_fidelity(Scalar lambda) {
    detail::require_unit_interval(lambda, "efficiency_fidelity");
    const Scalar e = 1 - lambda;
    const Scalar scale = 3 * (1 + lambda * lambda);
    if (e < Scalar(kSeriesCrossover)) {
        return scale * detail::info_series_over_e2(e) / std::numbers::ln2_v<Scalar>;
    }
    return scale * information_gain(lambda) / (e * e);
}

/// E_R = I / (1 - R), using 1 - R = (1 - lambda^2) / (1 + lambda^2). Zero at lambda = 1.
template <typename Scalar>
Scalar efficiency_reversibility(Scalar lambda) {
    detail::require_unit_interval(lambda, "efficiency_reversibility");
    if (lambda == 1) {
        return 0;
    }
    return information_gain(lambda) * (1 + lambda * lambda) / ((1 - lambda) * (1 + lambda));
}

/// Outcome probability averaged over a uniformly random state: kappa^2 (1 + lambda^2) / 2.
template <typename Scalar>
Scalar outcome_probability_total(Scalar kappa, Scalar lambda) {
    detail::require_unit_interval(lambda, "outcome_probability_total");
    if (!(kappa >= 0) || !std::isfinite(kappa)) {
        throw DomainError("outcome_probability_total: kappa must be finite and nonnegative");
    }
    return kappa * kappa * (1 + lambda * lambda) / 2;
}

template <typename Scalar>
struct TradeoffRecord {
    Scalar lambda;
    Scalar info;
    Scalar fidelity_opt;
    Scalar reversibility;
    Scalar eff_fidelity;
    Scalar eff_reversibility;
};

template <typename Scalar>
TradeoffRecord<Scalar> tradeoff_record(Scalar lambda) {
    return {lambda,
            information_gain(lambda),
            optimal_fidelity(lambda),
            reversibility(lambda),
            efficiency_fidelity(lambda),
            efficiency_reversibility(lambda)};
}

/// Fidelity of a measurement operator, with (beta, gamma) read off its canonical U.
template <typename Scalar>
Scalar fidelity(const MeasurementOperator<Scalar> &op) {
    const auto p = su2_params(op.canonical().u);
    return fidelity_closed(op.lambda(), p.beta, p.gamma);
}

/// Everything the closed forms say about one operator.
template <typename Scalar>
struct OperatorAnalysis {
    Scalar kappa;
    Scalar lambda;
    Su2Params<Scalar> u_params;
    Scalar info;
    Scalar fidelity;
    Scalar fidelity_opt;
    Scalar reversibility;
    Scalar eff_fidelity;
    Scalar eff_reversibility;
    Scalar outcome_probability;  // averaged over states
};

template <typename Scalar>
OperatorAnalysis<Scalar> analyze_operator(const MeasurementOperator<Scalar> &op) {
    const Scalar lambda = op.lambda();
    const auto params = su2_params(op.canonical().u);
    return {op.kappa(),
            lambda,
            params,
            information_gain(lambda),
            fidelity_closed(lambda, params.beta, params.gamma),
            optimal_fidelity(lambda),
            reversibility(lambda),
            efficiency_fidelity(lambda),
            efficiency_reversibility(lambda),
            outcome_probability_total(op.kappa(), lambda)};
}

template <typename Scalar>
struct AveragedQuantities {
    Scalar info_avg;           // mutual information, bits
    Scalar fidelity_avg;       // mean operation fidelity
    Scalar reversibility_avg;  // sum_m p(m) R(m)
    Scalar reversibility_inf;  // sum_m kappa_m^2 lambda_m^2, the same quantity via inf <M^dagger M>
    std::vector<Scalar> outcome_probs;
};

/// Outcome averages over a complete set, weighted by p(m) = kappa^2 (1 + lambda^2) / 2.
template <typename Scalar>
AveragedQuantities<Scalar> averaged_quantities(const MeasurementSet<Scalar> &set) {
    AveragedQuantities<Scalar> out{0, 0, 0, 0, {}};
    out.outcome_probs.reserve(set.size());
    for (const auto &op : set.operators()) {
        const Scalar k = op.kappa();
        const Scalar l = op.lambda();
        const Scalar p = outcome_probability_total(k, l);
        const auto params = su2_params(op.canonical().u);
        out.outcome_probs.push_back(p);
        out.info_avg += p * information_gain(l);
        out.fidelity_avg += p * fidelity_closed(l, params.beta, params.gamma);
        out.reversibility_avg += p * reversibility(l);
        out.reversibility_inf += k * k * l * l;
    }
    return out;
}

}  // namespace qmeas

#endif  // QMEAS_ANALYTICS_HPP
