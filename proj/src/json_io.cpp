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

#include "qmeas/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qmeas/errors.hpp"

namespace qmeas::io {

namespace {

std::complex<double> complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex entry must be a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Eigen::Matrix2cd matrix_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError("matrix must be an array of 2 rows");
    }
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r) {
        const json &row = j[r];
        if (!row.is_array() || row.size() != 2) {
            throw ParseError("matrix row must hold 2 entries");
        }
        for (int c = 0; c < 2; ++c) {
            m(r, c) = complex_from_json(row[c]);
        }
    }
    if (!m.allFinite()) {
        throw ParseError("matrix has non-finite entries");
    }
    return m;
}

json matrix_to_json(const Eigen::Matrix2cd &m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

MeasurementSet<double> measurement_set_from_json(const json &j, double tol) {
    if (!j.is_object() || !j.contains("operators") || !j["operators"].is_array()) {
        throw ParseError("measurement set must be an object with an \"operators\" array");
    }
    std::vector<MeasurementOperator<double>> ops;
    for (const auto &mj : j["operators"]) {
        ops.emplace_back(matrix_from_json(mj));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const json &lj = j["labels"];
        if (!lj.is_array()) {
            throw ParseError("\"labels\" must be an array");
        }
        for (const auto &l : lj) {
            if (l.is_string()) {
                labels.push_back(l.get<std::string>());
            } else if (l.is_number_integer()) {
                labels.push_back(std::to_string(l.get<long long>()));
            } else {
                throw ParseError("labels must be strings or integers");
            }
        }
        if (labels.size() != ops.size()) {
            throw ParseError("\"labels\" and \"operators\" differ in length");
        }
    }
    return MeasurementSet<double>(std::move(ops), std::move(labels), tol);
}

json measurement_set_to_json(const MeasurementSet<double> &set) {
    json ops = json::array();
    for (const auto &op : set.operators()) {
        ops.push_back(matrix_to_json(op.matrix()));
    }
    return {{"operators", ops}, {"labels", set.labels()}};
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace qmeas::io
