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

#ifndef QMEAS_ERRORS_HPP
#define QMEAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmeas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function (e.g. lambda > 1).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// The largest singular value is (numerically) zero.
class ZeroOperator : public Error {
   public:
    using Error::Error;
};

class NotUnitary : public Error {
   public:
    using Error::Error;
};

/// The requested outcome has (numerically) zero probability on the given state.
class ZeroProbability : public Error {
   public:
    using Error::Error;
};

class InvalidStrength : public Error {
   public:
    using Error::Error;
};

/// The operator is singular (lambda = 0), so no reversing measurement exists.
class Irreversible : public Error {
   public:
    using Error::Error;
};

/// Sum of M^dagger M deviates from the identity beyond tolerance.
class IncompleteSet : public Error {
   public:
    IncompleteSet(const std::string &what, double deviation) : Error(what), deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

   private:
    double deviation_;
};

class DegenerateSample : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace qmeas

#endif  // QMEAS_ERRORS_HPP
