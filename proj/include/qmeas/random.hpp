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

#ifndef QMEAS_RANDOM_HPP
#define QMEAS_RANDOM_HPP

#include <cstdint>
#include <random>

namespace qmeas {

/// Every stochastic routine takes one of these by reference; there is no
/// global or time-seeded source.
using Rng = std::mt19937_64;

/// Uniform draw on [0, 1) from the top 53 bits of one engine output, so the
/// stream is identical across standard library implementations.
template <typename Scalar = double>
Scalar uniform01(Rng &rng) {
    return static_cast<Scalar>(static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace qmeas

#endif  // QMEAS_RANDOM_HPP
