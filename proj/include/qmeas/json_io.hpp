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

#ifndef QMEAS_JSON_IO_HPP
#define QMEAS_JSON_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"

// JSON encodings shared by the command-line tools.
//
// Complex matrix: row-major nesting of [re, im] pairs,
//     [[[re, im], [re, im]], [[re, im], [re, im]]]
// Measurement set:
//     {"operators": [<matrix>, ...], "labels": ["0", "1", ...]}
// "labels" is optional; entries may be strings or integers.

namespace qmeas::io {

using json = nlohmann::json;

Eigen::Matrix2cd matrix_from_json(const json &j);
json matrix_to_json(const Eigen::Matrix2cd &m);

MeasurementSet<double> measurement_set_from_json(const json &j, double tol = kCompletenessTolerance);
json measurement_set_to_json(const MeasurementSet<double> &set);

/// Throws ParseError if the file cannot be read or is not valid JSON.
json read_json_file(const std::filesystem::path &path);

}  // namespace qmeas::io

#endif  // QMEAS_JSON_IO_HPP
