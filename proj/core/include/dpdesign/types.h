// Copyright 2026 The dpdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPDESIGN_TYPES_H_
#define DPDESIGN_TYPES_H_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dpdesign {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Bad user input: malformed specs, out-of-domain records, invalid parameters.
// Maps to exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Numerical failure: non-convergence, answerability violations, non-PSD
// inputs. Maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpdesign

#endif  // DPDESIGN_TYPES_H_
