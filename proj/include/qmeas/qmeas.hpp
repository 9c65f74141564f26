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

#ifndef QMEAS_QMEAS_HPP
#define QMEAS_QMEAS_HPP

#include "qmeas/analytics.hpp"
#include "qmeas/errors.hpp"
#include "qmeas/gauss_legendre.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/oracle.hpp"
#include "qmeas/random.hpp"
#include "qmeas/reversal.hpp"

#endif  // QMEAS_QMEAS_HPP
