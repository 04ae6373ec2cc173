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

#include "idapbc/model.hpp"

#include <string>

namespace idapbc {

State extrapolate(const State& x_k, const State& x_prev) {
    if (x_k.size() != x_prev.size()) {
        throw ContractViolation("extrapolate: state sizes differ");
    }
    return 1.5 * x_k - 0.5 * x_prev;
}

Vec discrete_gradient(const EnergyModel& model, const State& x_k, const State& x_prev) {
    if (x_k.size() != x_prev.size()) {
        throw ContractViolation("discrete_gradient: state sizes differ");
    }
    if (model.kind == GradientKind::extrapolated) {
        return model.gradient(extrapolate(x_k, x_prev));
    }
    if (!model.q_factor) {
        throw ContractViolation("discrete_gradient: midpoint kind needs q_factor");
    }
    const State mid = 0.5 * (x_k + x_prev);
    return 0.5 * model.q_factor(mid) * (x_k + x_prev);
}

State plant_step(const StructureMatrices& structure, const Vec& grad, const State& x_k,
                 const Vec& u, double T, int step) {
    if (!(T > 0.0)) {
        throw ContractViolation("plant_step: sampling period must be positive");
    }
    if (grad.size() != x_k.size()) {
        throw ContractViolation("plant_step: gradient/state size mismatch");
    }
    const Mat J = structure.J(x_k);
    const Mat R = structure.R(x_k);
    const Mat g = structure.g(x_k);
    if (u.size() != g.cols()) {
        throw ContractViolation("plant_step: input size mismatch");
    }
    State next = x_k + T * ((J - R) * grad) + T * (g * u);
    if (!next.allFinite()) {
        throw NumericalBlowup("plant_step: non-finite state at step " + std::to_string(step),
                              step);
    }
    return next;
}

Vec uncertain_gradient(const UncertainDecomposition& dec, const State& x, const Vec& theta) {
    if (theta.size() != dec.s) {
        throw ContractViolation("uncertain_gradient: parameter size mismatch");
    }
    return dec.known_gradient(x) + dec.regressor_shape(x) * dec.param_map(x, theta);
}

Vec passive_output(const StructureMatrices& structure, const Vec& grad, const State& x) {
    const Mat g = structure.g(x);
    if (grad.size() != g.rows()) {
        throw ContractViolation("passive_output: gradient/input-matrix size mismatch");
    }
    return g.transpose() * grad;
}

}  // namespace idapbc
