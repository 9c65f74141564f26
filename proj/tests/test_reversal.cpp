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

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "qmeas/reversal.hpp"
#include "test_support.hpp"

using namespace qmeas;
using namespace qmeas::testing;
using Catch::Matchers::WithinAbs;

namespace {

using Op = MeasurementOperator<double>;
using State = PureState<double>;
constexpr double kPi = std::numbers::pi;

Op random_invertible_operator(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    return Op(M2(u(rng) * random_unitary(rng) * diag(1.0, u(rng)) * random_unitary(rng)));
}

State random_state(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return State(std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng));
}

double largest_eigenvalue_of_gram(const M2 &r) {
    return Eigen::SelfAdjointEigenSolver<M2>(M2(r.adjoint() * r)).eigenvalues().maxCoeff();
}

}  // namespace

TEST_CASE("optimal_reversing examples", "[reversal]") {
    const auto id = optimal_reversing(Op(M2::Identity()));
    CHECK_THAT(std::abs(id.eta - C(1.0)), WithinAbs(0.0, 1e-15));
    CHECK(max_abs(M2(id.matrix - M2::Identity())) < 1e-15);

    const Op m(diag(1.0, 0.5));
    const auto rev = optimal_reversing(m);
    CHECK_THAT(rev.eta.real(), WithinAbs(0.5, 1e-15));
    CHECK(rev.eta.imag() == 0.0);
    CHECK(max_abs(M2(rev.matrix - diag(0.5, 1.0))) < 1e-15);
    CHECK(max_abs(M2(rev.matrix * m.matrix() - 0.5 * M2::Identity())) < 1e-15);

    CHECK_THROWS_AS(optimal_reversing(Op(diag(1.0, 0.0))), Irreversible);
}

TEST_CASE("reversing operators cancel the measurement at the optimal strength", "[reversal][property]") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const Op op = random_invertible_operator(rng);
        const auto rev = optimal_reversing(op);
        const double k2l2 = std::pow(op.kappa() * op.lambda(), 2);
        CHECK(max_abs(M2(rev.matrix * op.matrix() - rev.eta * M2::Identity())) < 1e-12);
        CHECK(std::norm(rev.eta) <= k2l2 + 1e-12);
        // The bound on |eta| is attained: R^dagger R has largest eigenvalue exactly 1.
        CHECK_THAT(largest_eigenvalue_of_gram(rev.matrix), WithinAbs(1.0, 1e-10));
    }
}

TEST_CASE("reversal_success_probability examples", "[reversal]") {
    CHECK_THAT(reversal_success_probability(Op(M2(0.7 * hadamard())), State(1.0, 2.0)), WithinAbs(1.0, 1e-14));
    CHECK_THAT(reversal_success_probability(Op(diag(1.0, 0.5)), State(0.0, 0.0)), WithinAbs(0.25, 1e-15));
    CHECK_THAT(reversal_success_probability(Op(diag(1.0, 0.5)), State(kPi, 0.0)), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(reversal_success_probability(Op(diag(1.0, 0.0)), State(0.3, 0.0)), Irreversible);
}

TEST_CASE("reversal_success_probability is bounded by one", "[reversal][property]") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 500; ++i) {
        const Op op = random_invertible_operator(rng);
        const State psi = random_state(rng);
        const double r = reversal_success_probability(op, psi);
        CHECK(r > 0.0);
        CHECK(r <= 1.0);
        // Equality exactly when q = lambda^2, i.e. V psi = |1>.
        const State worst = State::from_amplitudes(V2(op.canonical().v.adjoint() * V2(0, 1)));
        CHECK_THAT(reversal_success_probability(op, worst), WithinAbs(1.0, 1e-10));
        const State best = State::from_amplitudes(V2(op.canonical().v.adjoint() * V2(1, 0)));
        if (op.lambda() < 0.99) {
            CHECK(reversal_success_probability(op, best) < 1.0 - 1e-3);
        }
    }
}

TEST_CASE("simulate_reversal with a unitary operator always succeeds", "[reversal][sampling]") {
    Rng rng(5);
    const auto stats = simulate_reversal(Op(M2::Identity()), State(1.0, 1.0), 1000, rng);
    CHECK(stats.successes == 1000);
    CHECK(stats.empirical_rate == 1.0);
    CHECK(stats.recovered_fidelity_min >= 1.0 - 1e-10);
}

TEST_CASE("simulate_reversal success rates match lambda^2 / q", "[reversal][sampling]") {
    const Op op(diag(1.0, 0.5));
    const std::size_t n = 100000;
    SECTION("theta = pi/2") {
        Rng rng(6);
        const auto stats = simulate_reversal(op, State(kPi / 2, 0.0), n, rng);
        CHECK_THAT(stats.predicted_rate, WithinAbs(0.4, 1e-15));
        CHECK(std::abs(stats.empirical_rate - 0.4) <= 3 * binomial_sigma(0.4, n));
        CHECK(stats.recovered_fidelity_min >= 1.0 - 1e-10);
    }
    SECTION("theta = 0") {
        Rng rng(7);
        const auto stats = simulate_reversal(op, State(0.0, 0.0), n, rng);
        CHECK_THAT(stats.predicted_rate, WithinAbs(0.25, 1e-15));
        CHECK(std::abs(stats.empirical_rate - 0.25) <= 3 * binomial_sigma(0.25, n));
    }
    SECTION("errors") {
        Rng rng(8);
        CHECK_THROWS_AS(simulate_reversal(Op(diag(1.0, 0.0)), State(0.5, 0.0), 10, rng), Irreversible);
        CHECK_THROWS_AS(simulate_reversal(op, State(0.5, 0.0), 0, rng), DomainError);
    }
}

TEST_CASE("successful reversals restore the input state", "[reversal][property]") {
    std::mt19937_64 gen(33);
    Rng rng(34);
    for (int i = 0; i < 100; ++i) {
        const Op op = random_invertible_operator(gen);
        const State psi = random_state(gen);
        const auto stats = simulate_reversal(op, psi, 200, rng);
        CHECK(stats.recovered_fidelity_min >= 1.0 - 1e-10);
        CHECK(stats.recovered_fidelity_min <= 1.0 + 1e-12);
    }
}
