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

// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "test_support.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

using Op = MeasurementOperator<double>;
constexpr double kPi = std::numbers::pi;
const double kInfoMax = 1 - 1 / (2 * std::numbers::ln2);

// Collects failures for one criterion; the first few are printed.
class Criterion {
  public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void check(bool ok, const std::string &what) {
        ++checks_;
        if (!ok) {
            if (failures_.size() < 5) {
                failures_.push_back(what);
            }
            ++failed_;
        }
    }
    void close(double abs_err, double tol, const std::string &what) {
        std::ostringstream s;
        s.precision(17);
        s << what << " |err|=" << abs_err << " tol=" << tol;
        check(abs_err <= tol, s.str());
    }
    bool report(double seconds) const {
        std::printf("[%s] %s (%zu checks, %zu failed, %.1fs)\n", failed_ ? "FAIL" : "PASS", name_.c_str(), checks_,
                    failed_, seconds);
        for (const auto &f : failures_) {
            std::printf("       %s\n", f.c_str());
        }
        return failed_ == 0;
    }

  private:
    std::string name_;
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

std::string lam(double l) {
    std::ostringstream s;
    s << "lambda=" << l;
    return s.str();
}

void endpoints(Criterion &c) {
    c.close(std::abs(information_gain(0.0) - kInfoMax), 1e-12, "I(0)");
    c.close(std::abs(information_gain(1.0)), 1e-9, "I(1)");
    c.close(std::abs(optimal_fidelity(0.0) - 2.0 / 3), 1e-12, "F_opt(0)");
    c.close(std::abs(optimal_fidelity(1.0) - 1), 1e-12, "F_opt(1)");
    c.close(std::abs(reversibility(0.0)), 1e-12, "R(0)");
    c.close(std::abs(reversibility(1.0) - 1), 1e-12, "R(1)");
}

void efficiency_endpoints(Criterion &c) {
    c.close(std::abs(efficiency_fidelity(0.0) - 3 * kInfoMax), 1e-12, "E_F(0)");
    c.close(std::abs(efficiency_reversibility(0.0) - kInfoMax), 1e-12, "E_R(0)");
    c.close(std::abs(efficiency_fidelity(1 - 1e-6) - 1 / std::numbers::ln2), 1e-6, "E_F(1-1e-6)");
    c.check(efficiency_reversibility(1.0) == 0.0, "E_R(1) != 0");
}

void oracle_equivalence(Criterion &c) {
    Rng rng(42);
    const std::size_t samples = 1'000'000;
    for (int k = 1; k <= 19; ++k) {
        const double l = 0.05 * k;
        const Op op(diag(1, l));
        const double info = information_gain(l), fid = optimal_fidelity(l), rev = reversibility(l);
        c.close(std::abs(quadrature_information(op, 64).value - info), 1e-8, lam(l) + " quadrature I");
        c.close(std::abs(quadrature_fidelity(op, 64).value - fid), 1e-8, lam(l) + " quadrature F");
        c.close(std::abs(quadrature_reversibility(op, 64).value - rev), 1e-8, lam(l) + " quadrature R");
        const auto ei = estimate_information(op, samples, rng);
        const auto ef = estimate_fidelity(op, samples, rng);
        const auto er = estimate_reversibility(op, samples, rng);
        c.close(std::abs(ei.value - info), 4 * ei.std_error, lam(l) + " Monte Carlo I");
        c.close(std::abs(ef.value - fid), 4 * ef.std_error, lam(l) + " Monte Carlo F");
        c.close(std::abs(er.value - rev), 4 * er.std_error, lam(l) + " Monte Carlo R");
    }
}

void fidelity_bounds(Criterion &c) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double l = u(gen), b = 2 * kPi * u(gen), g = kPi * u(gen);
        const double f = fidelity_closed(l, b, g);
        c.check(f >= 1.0 / 3 - 1e-15 && f <= optimal_fidelity(l) + 1e-15, "bound violated at " + lam(l));
        c.close(std::abs(fidelity_closed(l, b, kPi / 2) - 1.0 / 3), 1e-12, "lower bound at gamma=pi/2");
        c.close(std::abs(fidelity_closed(l, 0.0, 0.0) - optimal_fidelity(l)), 1e-12, "upper bound at beta=gamma=0");
    }
    Rng rng(44);
    for (double l : {0.2, 0.5, 0.9}) {
        const auto est = estimate_fidelity(Op(M2(pauli_x() * diag(1, l))), 1'000'000, rng);
        c.close(std::abs(est.value - 1.0 / 3), 4 * est.std_error, "U = X Monte Carlo at " + lam(l));
    }
}

void reversal_statistics(Criterion &c) {
    Rng rng(5);
    const std::size_t trials = 100'000;
    const double z = 3.2905267314918945;  // two-sided 99.9%
    for (double l : {0.3, 0.5, 0.8}) {
        for (double theta : {0.0, kPi / 2, kPi}) {
            const Op op(diag(1, l));
            const PureState<double> psi(theta, 0.0);
            const auto stats = simulate_reversal(op, psi, trials, rng);
            const double p = l * l / q_value(l, theta);
            const double half = z * std::sqrt(p * (1 - p) / trials) + 0.5 / trials;
            std::ostringstream what;
            what << lam(l) << " theta=" << theta << " rate " << stats.empirical_rate << " vs " << p;
            c.check(std::abs(stats.empirical_rate - p) <= half, what.str());
            c.check(stats.recovered_fidelity_min >= 1 - 1e-10, what.str() + " recovery overlap");
        }
    }
}

void invariance(Criterion &c) {
    std::mt19937_64 gen(6);
    const std::size_t n = 200'000;
    const Op base(diag(1, 0.5));
    Rng rng(7);
    const auto bi = estimate_information(base, n, rng);
    const auto bf = estimate_fidelity(base, n, rng);
    const auto br = estimate_reversibility(base, n, rng);
    auto same = [&](const Estimate<double> &a, const Estimate<double> &b, const std::string &what) {
        c.close(std::abs(a.value - b.value), 4 * std::hypot(a.std_error, b.std_error), what);
    };
    for (int i = 0; i < 20; ++i) {
        const M2 w = random_unitary(gen);
        const Op left(M2(w * diag(1, 0.5)));
        const Op right(M2(diag(1, 0.5) * w));
        const std::string tag = "unitary " + std::to_string(i);
        same(estimate_information(left, n, rng), bi, tag + " left I");
        same(estimate_reversibility(left, n, rng), br, tag + " left R");
        same(estimate_information(right, n, rng), bi, tag + " right I");
        same(estimate_fidelity(right, n, rng), bf, tag + " right F");
        same(estimate_reversibility(right, n, rng), br, tag + " right R");
    }
}

void monotonicity(Criterion &c) {
    const int n = 10000;
    auto prev = tradeoff_record(0.0);
    for (int i = 1; i <= n; ++i) {
        const auto r = tradeoff_record(double(i) / n);
        const std::string at = lam(r.lambda);
        c.check(r.info < prev.info, "I not decreasing at " + at);
        c.check(r.fidelity_opt > prev.fidelity_opt, "F_opt not increasing at " + at);
        c.check(r.reversibility > prev.reversibility, "R not increasing at " + at);
        c.check(r.eff_fidelity >= prev.eff_fidelity, "E_F not increasing at " + at);
        c.check(r.eff_reversibility <= prev.eff_reversibility, "E_R not decreasing at " + at);
        prev = r;
    }
}

void averages(Criterion &c) {
    const auto proj = averaged_quantities(two_outcome_family(0.0, 1.0));
    c.close(std::abs(proj.info_avg - kInfoMax), 1e-12, "projective I");
    c.close(std::abs(proj.fidelity_avg - 2.0 / 3), 1e-12, "projective F");
    c.close(std::abs(proj.reversibility_avg), 1e-12, "projective R");

    std::mt19937_64 gen(8);
    for (int i = 0; i < 10; ++i) {
        const MeasurementSet<double> set = [&] {
            std::vector<Op> ops;
            for (const M2 &m : random_two_outcome_set(gen)) {
                ops.emplace_back(m);
            }
            return MeasurementSet<double>(std::move(ops));
        }();
        const auto avg = averaged_quantities(set);
        double inf = 0, psum = 0;
        for (const auto &op : set.operators()) {
            inf += op.kappa() * op.kappa() * op.lambda() * op.lambda();
        }
        for (double p : avg.outcome_probs) {
            psum += p;
        }
        const std::string tag = "random set " + std::to_string(i);
        c.close(std::abs(avg.reversibility_avg - inf), 1e-12, tag + " R dual forms");
        c.close(std::abs(psum - 1), 1e-10, tag + " sum p(m)");
    }
}

void tradeoff_curve(Criterion &c) {
    auto check_rows = [&](const std::vector<TradeoffRecord<double>> &rows, const std::string &tag) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            // Walking down in I, F_opt and R must go up.
            const auto &hi = rows[i - 1], &lo = rows[i];
            c.check(lo.info < hi.info, tag + " I not decreasing at " + lam(lo.lambda));
            c.check(lo.fidelity_opt > hi.fidelity_opt, tag + " F_opt not decreasing in I at " + lam(lo.lambda));
            c.check(lo.reversibility > hi.reversibility, tag + " R not decreasing in I at " + lam(lo.lambda));
        }
    };
    check_rows(cli::sweep_records(0.0, 1.0, 10001), "grid");

    // The printed table, parsed back.
    std::ostringstream csv;
    cli::write_sweep_csv(csv, cli::sweep_records(0.0, 1.0, 101));
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    std::vector<TradeoffRecord<double>> parsed;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        double v[6];
        for (double &x : v) {
            std::getline(row, cell, ',');
            x = std::stod(cell);
        }
        parsed.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    c.check(parsed.size() == 101, "csv row count");
    check_rows(parsed, "csv");
}

}  // namespace

int main() {
    struct Entry {
        const char *name;
        std::function<void(Criterion &)> body;
    };
    const Entry entries[] = {
        {"1 endpoint values", endpoints},
        {"2 efficiency endpoints", efficiency_endpoints},
        {"3 oracle equivalence (19 lambdas, 64 nodes, 1e6 samples)", oracle_equivalence},
        {"4 fidelity bounds", fidelity_bounds},
        {"5 reversal statistics", reversal_statistics},
        {"6 invariance under left and right unitaries", invariance},
        {"7 monotonicity", monotonicity},
        {"8 outcome averages", averages},
        {"9 tradeoff curve", tradeoff_curve},
    };
    int failed = 0;
    for (const auto &e : entries) {
        Criterion c(e.name);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.body(c);
        } catch (const std::exception &ex) {
            c.check(false, std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !c.report(secs);
    }
    std::printf("%d of 9 criteria failed\n", failed);
    return failed ? 1 : 0;
}
