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

#ifndef IDAPBC_MODEL_HPP
#define IDAPBC_MODEL_HPP

#include <functional>

#include "idapbc/types.hpp"

namespace idapbc {

/**
 * @brief Structure matrices of a port-controlled Hamiltonian system.
 *
 * J(x) is skew-symmetric, R(x) symmetric positive semidefinite, and g(x)
 * has full column rank m. All three are functions of the state so that
 * state-dependent interconnection fits, although the bundled example
 * systems use constant matrices.
 */
struct StructureMatrices {
    int n = 0;  ///< state dimension
    int m = 0;  ///< input dimension
    std::function<Mat(const State&)> J;
    std::function<Mat(const State&)> R;
    std::function<Mat(const State&)> g;
};

/// Which two-point discrete gradient a model uses.
enum class GradientKind {
    /// grad H evaluated at (3 x_k - x_{k-1}) / 2; explicit, needs one step of history.
    extrapolated,
    /// (1/2) Q(x_mid) (x_{k+1} + x_k) for grad H(x) = Q(x) x; satisfies the
    /// energy-difference identity exactly for quadratic energies.
    midpoint,
};

/**
 * @brief Scalar energy function together with its analytic gradient.
 *
 * For the midpoint gradient kind, q_factor must supply Q(x) with
 * grad H(x) = Q(x) x.
 */
struct EnergyModel {
    std::function<double(const State&)> hamiltonian;
    std::function<Vec(const State&)> gradient;
    GradientKind kind = GradientKind::extrapolated;
    std::function<Mat(const State&)> q_factor;  // midpoint kind only
};

/**
 * @brief Split of the discrete gradient into known and parameterized parts.
 *
 * The full discrete gradient at an evaluation point x is
 * known_gradient(x) + regressor_shape(x) * param_map(x, theta), with
 * regressor_shape n-by-r and param_map r-valued (nonlinear in theta).
 */
struct UncertainDecomposition {
    int r = 0;  ///< parameterization width
    int s = 0;  ///< number of unknown parameters
    std::function<Vec(const State&)> known_gradient;
    std::function<Mat(const State&)> regressor_shape;
    std::function<Vec(const State&, const Vec&)> param_map;
};

/// Sampling period and horizon of a discrete-time run.
struct SamplingConfig {
    double T = 0.01;  ///< sampling period [s], > 0
    int steps = 1;    ///< number of plant steps, >= 1
};

/// Evaluation point (3 x_k - x_prev) / 2 of the extrapolated gradient rule.
State extrapolate(const State& x_k, const State& x_prev);

/**
 * @brief Two-point discrete gradient of an energy model.
 *
 * For the extrapolated kind, x_prev is x_{k-1} (pass x_k itself at the first
 * step). For the midpoint kind, x_prev plays the role of x_{k+1}.
 */
Vec discrete_gradient(const EnergyModel& model, const State& x_k, const State& x_prev);

/// One step of the discrete plant: x_k + T (J - R) grad + T g u.
/// Throws NumericalBlowup carrying @p step if the result is not finite.
State plant_step(const StructureMatrices& structure, const Vec& grad, const State& x_k,
                 const Vec& u, double T, int step = -1);

/// known_gradient(x) + Pi(x) phi(x, theta) at the evaluation point x.
Vec uncertain_gradient(const UncertainDecomposition& dec, const State& x, const Vec& theta);

/// Passive output y = g(x)^T grad.
Vec passive_output(const StructureMatrices& structure, const Vec& grad, const State& x);

}  // namespace idapbc

#endif  // IDAPBC_MODEL_HPP
