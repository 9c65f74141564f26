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

#ifndef QMEAS_TOOLS_CLI_HPP
#define QMEAS_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmeas/analytics.hpp"

namespace qmeas::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// 12 significant digits, the precision of every number the tool prints.
std::string format_number(double x);

std::vector<TradeoffRecord<double>> sweep_records(double lambda_min, double lambda_max, int points);
void write_sweep_csv(std::ostream &out, const std::vector<TradeoffRecord<double>> &rows);
nlohmann::json sweep_json(const std::vector<TradeoffRecord<double>> &rows);

struct VerifyOptions {
    std::vector<double> lambdas;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
    std::size_t nodes = 64;
    double tolerance = 1e-8;  // quadrature vs closed form, absolute
    double sigmas = 4;        // Monte Carlo vs closed form, in standard errors
    /// Test hook: offsets the closed form of the named quantity
    /// ("information", "fidelity" or "reversibility") by 1e-2.
    std::string inject_fault;
};

struct VerifyCheck {
    double lambda = 0;
    std::string quantity;
    std::string method;  // "quadrature" or "monte-carlo"
    bool skipped = false;
    std::string note;
    double closed_form = 0;
    double estimate = 0;
    double std_error = 0;
    double jackknife_error = 0;
    double difference = 0;
    double threshold = 0;
    bool pass = true;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;
};

/// The default lambda grid {0.05, 0.10, ..., 0.95}.
std::vector<double> default_lambda_grid();

/// Closed forms against quadrature and Monte Carlo for diag(1, lambda) operators.
VerifyReport run_verification(const VerifyOptions &opts);
nlohmann::json verify_report_json(const VerifyOptions &opts, const VerifyReport &report);

}  // namespace qmeas::cli

#endif  // QMEAS_TOOLS_CLI_HPP
