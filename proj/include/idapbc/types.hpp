/*
 Copyright 2026 The idapbc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef IDAPBC_TYPES_HPP
#define IDAPBC_TYPES_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace idapbc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
/// State vector [q; p]: generalized positions stacked over generalized momenta.
using State = Eigen::VectorXd;

/// A caller broke a documented precondition (dimension mismatch, T <= 0, ...).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value left its admissible set (non-positive inertia, singular g^T g, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A step produced a non-finite value; carries the step index when known.
struct NumericalBlowup : std::runtime_error {
    explicit NumericalBlowup(const std::string& what, int step_index = -1)
        : std::runtime_error(what), step(step_index) {}
    int step;
};

/// Configuration file problems (missing keys, unknown keys, bad values).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace idapbc

#endif  // IDAPBC_TYPES_HPP
