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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "qmeas/json_io.hpp"
#include "qmeas/qmeas.hpp"

namespace qmeas::cli {

using nlohmann::json;

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

// Rounded to the printed precision so JSON and CSV carry the same values.
double printed(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

Eigen::Matrix2cd diag_operator(double lambda) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = lambda;
    return m;
}

void write_kv(std::ostream &out, const std::string &key, double value) {
    out << key << ": " << format_number(value) << '\n';
}

// Destination for command output: the given path, or `out` when empty.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw std::runtime_error("cannot open output file " + path);
            }
            stream_ = file_.get();
        }
    }
    std::ostream &stream() { return *stream_; }
    void finish(const std::string &path) {
        stream_->flush();
        if (!*stream_) {
            throw std::runtime_error("write failed for " + (path.empty() ? std::string("stdout") : path));
        }
    }

   private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_;
};

}  // namespace

std::vector<TradeoffRecord<double>> sweep_records(double lambda_min, double lambda_max, int points) {
    if (!(lambda_min >= 0 && lambda_max <= 1 && lambda_min <= lambda_max)) {
        throw DomainError("sweep: need 0 <= lambda-min <= lambda-max <= 1");
    }
    if (points < 2) {
        throw DomainError("sweep: points must be at least 2");
    }
    std::vector<TradeoffRecord<double>> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double lambda =
            i == points - 1 ? lambda_max : lambda_min + (lambda_max - lambda_min) * i / (points - 1);
        rows.push_back(tradeoff_record(lambda));
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const std::vector<TradeoffRecord<double>> &rows) {
    out << "lambda,info,fidelity_opt,reversibility,eff_fidelity,eff_reversibility\n";
    for (const auto &r : rows) {
        out << format_number(r.lambda) << ',' << format_number(r.info) << ',' << format_number(r.fidelity_opt)
            << ',' << format_number(r.reversibility) << ',' << format_number(r.eff_fidelity) << ','
            << format_number(r.eff_reversibility) << '\n';
    }
}

json sweep_json(const std::vector<TradeoffRecord<double>> &rows) {
    json arr = json::array();
    for (const auto &r : rows) {
        arr.push_back({{"lambda", printed(r.lambda)},
                       {"info", printed(r.info)},
                       {"fidelity_opt", printed(r.fidelity_opt)},
                       {"reversibility", printed(r.reversibility)},
                       {"eff_fidelity", printed(r.eff_fidelity)},
                       {"eff_reversibility", printed(r.eff_reversibility)}});
    }
    return arr;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) {
        grid.push_back(0.05 * i);
    }
    return grid;
}

VerifyReport run_verification(const VerifyOptions &opts) {
    for (const double l : opts.lambdas) {
        if (!(l >= 0 && l <= 1)) {
            throw DomainError("verify: lambda values must lie in [0, 1]");
        }
    }
    Rng rng(opts.seed);
    VerifyReport report;
    auto offset = [&](const std::string &quantity) { return opts.inject_fault == quantity ? 1e-2 : 0.0; };

    for (const double lambda : opts.lambdas) {
        const MeasurementOperator<double> op(diag_operator(lambda));
        struct Quantity {
            std::string name;
            double closed;
        };
        const std::vector<Quantity> quantities = {
            {"information", information_gain(lambda) + offset("information")},
            {"fidelity", optimal_fidelity(lambda) + offset("fidelity")},
            {"reversibility", reversibility(lambda) + offset("reversibility")},
        };
        for (const auto &[name, closed] : quantities) {
            if (name == "reversibility" && op.lambda() < kIrreversibleLambda) {
                for (const char *method : {"quadrature", "monte-carlo"}) {
                    VerifyCheck c;
                    c.lambda = lambda;
                    c.quantity = name;
                    c.method = method;
                    c.skipped = true;
                    c.note = "irreversible";
                    report.checks.push_back(c);
                }
                continue;
            }
            Estimate<double> quad, mc;
            if (name == "information") {
                quad = quadrature_information(op, opts.nodes);
                mc = estimate_information(op, opts.samples, rng);
            } else if (name == "fidelity") {
                quad = quadrature_fidelity(op, opts.nodes);
                mc = estimate_fidelity(op, opts.samples, rng);
            } else {
                quad = quadrature_reversibility(op, opts.nodes);
                mc = estimate_reversibility(op, opts.samples, rng);
            }

            VerifyCheck q;
            q.lambda = lambda;
            q.quantity = name;
            q.method = "quadrature";
            q.closed_form = closed;
            q.estimate = quad.value;
            q.difference = std::abs(quad.value - closed);
            q.threshold = opts.tolerance;
            q.pass = q.difference <= q.threshold;
            report.checks.push_back(q);

            VerifyCheck m;
            m.lambda = lambda;
            m.quantity = name;
            m.method = "monte-carlo";
            m.closed_form = closed;
            m.estimate = mc.value;
            m.std_error = mc.std_error;
            m.jackknife_error = mc.jackknife_error;
            m.difference = std::abs(mc.value - closed);
            // The absolute floor only matters when the integrand is constant (lambda = 1).
            m.threshold = opts.sigmas * mc.std_error + 1e-12;
            m.pass = m.difference <= m.threshold;
            report.checks.push_back(m);
        }
    }
    for (const auto &c : report.checks) {
        report.all_pass = report.all_pass && c.pass;
    }
    return report;
}

json verify_report_json(const VerifyOptions &opts, const VerifyReport &report) {
    json checks = json::array();
    for (const auto &c : report.checks) {
        json j = {{"lambda", c.lambda}, {"quantity", c.quantity}, {"method", c.method}};
        if (c.skipped) {
            j["status"] = "skipped";
            j["note"] = c.note;
        } else {
            j["status"] = c.pass ? "pass" : "fail";
            j["closed_form"] = c.closed_form;
            j["estimate"] = c.estimate;
            j["difference"] = c.difference;
            j["threshold"] = c.threshold;
            if (c.method == "monte-carlo") {
                j["std_error"] = c.std_error;
                j["jackknife_error"] = c.jackknife_error;
            }
        }
        checks.push_back(j);
    }
    return {{"seed", opts.seed},
            {"samples", opts.samples},
            {"nodes", opts.nodes},
            {"tolerance", opts.tolerance},
            {"sigmas", opts.sigmas},
            {"all_pass", report.all_pass},
            {"checks", checks}};
}

namespace {

void print_verify_summary(std::ostream &out, const VerifyReport &report) {
    std::size_t failed = 0, skipped = 0;
    for (const auto &c : report.checks) {
        out << "lambda=" << format_number(c.lambda) << ' ' << c.quantity << ' ' << c.method << ' ';
        if (c.skipped) {
            ++skipped;
            out << "SKIP (" << c.note << ")\n";
            continue;
        }
        out << "|diff|=" << format_number(c.difference) << " threshold=" << format_number(c.threshold) << ' '
            << (c.pass ? "PASS" : "FAIL") << '\n';
        if (!c.pass) {
            ++failed;
        }
    }
    out << (report.all_pass ? "all checks passed" : "verification FAILED") << " (" << report.checks.size()
        << " checks, " << failed << " failed, " << skipped << " skipped)\n";
}

void print_analysis(std::ostream &out, const OperatorAnalysis<double> &a, bool as_json) {
    if (as_json) {
        out << json{{"kappa", printed(a.kappa)},
                    {"lambda", printed(a.lambda)},
                    {"alpha", printed(a.u_params.alpha)},
                    {"beta", printed(a.u_params.beta)},
                    {"gamma", printed(a.u_params.gamma)},
                    {"delta", printed(a.u_params.delta)},
                    {"info", printed(a.info)},
                    {"fidelity", printed(a.fidelity)},
                    {"fidelity_opt", printed(a.fidelity_opt)},
                    {"reversibility", printed(a.reversibility)},
                    {"eff_fidelity", printed(a.eff_fidelity)},
                    {"eff_reversibility", printed(a.eff_reversibility)},
                    {"outcome_probability", printed(a.outcome_probability)}}
                   .dump(2)
            << '\n';
        return;
    }
    write_kv(out, "kappa", a.kappa);
    write_kv(out, "lambda", a.lambda);
    write_kv(out, "alpha", a.u_params.alpha);
    write_kv(out, "beta", a.u_params.beta);
    write_kv(out, "gamma", a.u_params.gamma);
    write_kv(out, "delta", a.u_params.delta);
    write_kv(out, "info", a.info);
    write_kv(out, "fidelity", a.fidelity);
    write_kv(out, "fidelity_opt", a.fidelity_opt);
    write_kv(out, "reversibility", a.reversibility);
    write_kv(out, "eff_fidelity", a.eff_fidelity);
    write_kv(out, "eff_reversibility", a.eff_reversibility);
    write_kv(out, "outcome_probability", a.outcome_probability);
}

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<char *> to_argv(std::vector<std::string> &args) {
    std::vector<char *> argv;
    for (auto &a : args) {
        argv.push_back(a.data());
    }
    return argv;
}

}  // namespace

int run(const std::vector<std::string> &args_in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Information, fidelity and reversibility of single-qubit measurements", "qmeas"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;

    double lambda_min = 0.0, lambda_max = 1.0;
    int points = 101;
    auto *sweep = app.add_subcommand("sweep", "Tabulate I, F_opt, R, E_F, E_R on a lambda grid");
    sweep->add_option("--lambda-min", lambda_min, "Smallest lambda")->capture_default_str();
    sweep->add_option("--lambda-max", lambda_max, "Largest lambda")->capture_default_str();
    sweep->add_option("--points", points, "Number of grid points (>= 2)")->capture_default_str();
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep->add_option("--output", output, "Output file (default: stdout)");

    std::string operator_path;
    std::string text_format = "text";
    auto *analyze = app.add_subcommand("analyze", "Canonical form and closed-form quantities of one operator");
    analyze->add_option("operator", operator_path, "Complex-matrix JSON file")->required();
    analyze->add_option("--format", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    VerifyOptions vopts;
    std::uint64_t seed = 0;
    std::string report_path;
    auto *verify = app.add_subcommand("verify", "Check closed forms against quadrature and Monte Carlo");
    verify->add_option("--lambda", vopts.lambdas, "Comma-separated lambda values (default 0.05,...,0.95)")
        ->delimiter(',');
    verify->add_option("--samples", vopts.samples, "Monte Carlo samples per estimate")->capture_default_str();
    verify->add_option("--seed", seed, "Random seed")->required();
    verify->add_option("--nodes", vopts.nodes, "Gauss-Legendre nodes")->capture_default_str();
    verify->add_option("--tolerance", vopts.tolerance, "Quadrature tolerance")->capture_default_str();
    verify->add_option("--output", report_path, "Write the JSON report to this file");
    verify->add_option("--format", text_format, "text or json (stdout)")->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--inject-fault", vopts.inject_fault)
        ->check(CLI::IsMember({"information", "fidelity", "reversibility"}))
        ->group("");

    double rev_lambda = 0, theta = 0, phi = 0;
    std::size_t trials = 100000;
    std::uint64_t rev_seed = 0;
    auto *simulate = app.add_subcommand("simulate-reversal", "Monte Carlo of measure-then-reverse on diag(1, lambda)");
    simulate->add_option("--lambda", rev_lambda, "Singular-value ratio in (0, 1]")->required();
    simulate->add_option("--theta", theta, "Polar angle of the input state")->capture_default_str();
    simulate->add_option("--phi", phi, "Azimuthal angle of the input state")->capture_default_str();
    simulate->add_option("--trials", trials, "Number of trials")->capture_default_str();
    simulate->add_option("--seed", rev_seed, "Random seed")->required();
    simulate->add_option("--format", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string set_path;
    double completeness_tol = kCompletenessTolerance;
    auto *average = app.add_subcommand("average", "Outcome-averaged I, F, R of a complete measurement set");
    average->add_option("set", set_path, "Measurement-set JSON file")->required();
    average->add_option("--tolerance", completeness_tol, "Completeness tolerance")->capture_default_str();
    average->add_option("--format", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> args = args_in;
    auto argv = to_argv(args);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*sweep) {
            const auto rows = sweep_records(lambda_min, lambda_max, points);
            Sink sink(output, out);
            if (format == "csv") {
                write_sweep_csv(sink.stream(), rows);
            } else {
                sink.stream() << sweep_json(rows).dump(2) << '\n';
            }
            sink.finish(output);
            return kOk;
        }
        if (*analyze) {
            const MeasurementOperator<double> op(io::matrix_from_json(io::read_json_file(operator_path)));
            print_analysis(out, analyze_operator(op), text_format == "json");
            return kOk;
        }
        if (*verify) {
            vopts.seed = seed;
            if (vopts.lambdas.empty()) {
                vopts.lambdas = default_lambda_grid();
            }
            const auto report = run_verification(vopts);
            const json j = verify_report_json(vopts, report);
            if (text_format == "json") {
                out << j.dump(2) << '\n';
            } else {
                print_verify_summary(out, report);
            }
            if (!report_path.empty()) {
                Sink sink(report_path, out);
                sink.stream() << j.dump(2) << '\n';
                sink.finish(report_path);
            }
            return report.all_pass ? kOk : kCheckFailed;
        }
        if (*simulate) {
            const MeasurementOperator<double> op(diag_operator(rev_lambda));
            const PureState<double> psi(theta, phi);
            Rng rng(rev_seed);
            const auto stats = simulate_reversal(op, psi, trials, rng);
            const auto [lo, hi] = wilson_interval(stats.successes, stats.trials, 2.5758293035489004);
            if (text_format == "json") {
                out << json{{"lambda", printed(rev_lambda)},
                            {"theta", printed(psi.theta())},
                            {"phi", printed(psi.phi())},
                            {"trials", stats.trials},
                            {"successes", stats.successes},
                            {"predicted_rate", printed(stats.predicted_rate)},
                            {"empirical_rate", printed(stats.empirical_rate)},
                            {"ci99_low", printed(lo)},
                            {"ci99_high", printed(hi)},
                            {"recovered_fidelity_min", printed(stats.recovered_fidelity_min)}}
                           .dump(2)
                    << '\n';
            } else {
                write_kv(out, "lambda", rev_lambda);
                write_kv(out, "theta", psi.theta());
                write_kv(out, "phi", psi.phi());
                out << "trials: " << stats.trials << '\n' << "successes: " << stats.successes << '\n';
                write_kv(out, "predicted_rate", stats.predicted_rate);
                write_kv(out, "empirical_rate", stats.empirical_rate);
                write_kv(out, "ci99_low", lo);
                write_kv(out, "ci99_high", hi);
                write_kv(out, "recovered_fidelity_min", stats.recovered_fidelity_min);
            }
            return kOk;
        }
        if (*average) {
            const auto set = io::measurement_set_from_json(io::read_json_file(set_path), completeness_tol);
            const auto avg = averaged_quantities(set);
            double total = 0;
            for (const double p : avg.outcome_probs) {
                total += p;
            }
            if (text_format == "json") {
                json outcomes = json::array();
                for (std::size_t i = 0; i < set.size(); ++i) {
                    outcomes.push_back({{"label", set.labels()[i]},
                                        {"kappa", printed(set[i].kappa())},
                                        {"lambda", printed(set[i].lambda())},
                                        {"probability", printed(avg.outcome_probs[i])}});
                }
                out << json{{"outcomes", outcomes},
                            {"probability_sum", printed(total)},
                            {"info_avg", printed(avg.info_avg)},
                            {"fidelity_avg", printed(avg.fidelity_avg)},
                            {"reversibility_avg", printed(avg.reversibility_avg)},
                            {"reversibility_inf", printed(avg.reversibility_inf)}}
                           .dump(2)
                    << '\n';
            } else {
                out << "label,kappa,lambda,probability\n";
                for (std::size_t i = 0; i < set.size(); ++i) {
                    out << set.labels()[i] << ',' << format_number(set[i].kappa()) << ','
                        << format_number(set[i].lambda()) << ',' << format_number(avg.outcome_probs[i]) << '\n';
                }
                write_kv(out, "probability_sum", total);
                write_kv(out, "info_avg", avg.info_avg);
                write_kv(out, "fidelity_avg", avg.fidelity_avg);
                write_kv(out, "reversibility_avg", avg.reversibility_avg);
                write_kv(out, "reversibility_inf", avg.reversibility_inf);
            }
            return kOk;
        }
    } catch (const IncompleteSet &e) {
        err << "error: incomplete measurement set (deviation " << format_number(e.deviation()) << "): " << e.what()
            << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace qmeas::cli
