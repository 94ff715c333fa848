// Copyright 2026 The FairCover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMC_ERRORS_HPP_
#define FMC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fmc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input parsed but violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A caller-visible precondition of an algorithm does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// No guess/branch of an algorithm produced a feasible output.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Simplex failed numerically or hit its iteration cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fmc

#endif  // FMC_ERRORS_HPP_
