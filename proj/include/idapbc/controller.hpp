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

#ifndef IDAPBC_CONTROLLER_HPP
#define IDAPBC_CONTROLLER_HPP

#include <functional>

#include "idapbc/model.hpp"
#include "idapbc/types.hpp"

namespace idapbc {

/**
 * @brief Target Hamiltonian dynamics x_{k+1} - x_k = T (J_d - R_d) grad H_d.
 *
 * J_d and the desired energy depend on the physical parameter vector; the
 * adaptive controller evaluates them at the current estimate, the reference
 * integrator at the true value. R_d = g K_v g^T carries the damping
 * injection so that the matched closed loop and this recursion coincide.
 */
struct DesiredSystem {
    std::function<Mat(const State&, const Vec&)> J_d;
    std::function<Mat(const State&)> R_d;
    std::function<double(const State&, const Vec&)> H_d;
    std::function<Vec(const State&, const Vec&)> grad_H_d;
    State x_star;

    /// Extrapolated discrete gradient of H_d on the same (x_k, x_{k-1}) pair
    /// the plant gradient uses.
    Vec discrete_gradient(const State& x_k, const State& x_prev, const Vec& theta) const {
        return grad_H_d(extrapolate(x_k, x_prev), theta);
    }
};

/// Damping injection gain; symmetric positive semidefinite, m-by-m.
struct ControllerGains {
    Mat K_v;
};

/// Full-row-rank left annihilator of g: returns an (n-m)-by-n matrix with
/// orthonormal rows spanning the orthogonal complement of range(g).
Mat left_annihilator(const Mat& g);

/// Matching defect g_perp (J_d grad H_d - (J - R) grad H) with both gradients
/// evaluated at theta on the evaluation point of (x_k, x_prev). Zero rows
/// certify that the desired dynamics are reachable at this state.
Vec matching_residual(const StructureMatrices& structure, const UncertainDecomposition& dec,
                      const DesiredSystem& desired, const State& x_k, const State& x_prev,
                      const Vec& theta);

/// Energy-shaping input: (g^T g)^{-1} g^T { J_d grad H_d(theta_est)
/// - (J - R) [Pi phi(theta_est) + grad H_kn] }.
Vec energy_shaping(const StructureMatrices& structure, const UncertainDecomposition& dec,
                   const DesiredSystem& desired, const State& x_k, const State& x_prev,
                   const Vec& theta_est);

/// Damping injection -K_v g^T grad H_d.
Vec damping_injection(const ControllerGains& gains, const Mat& g, const Vec& grad_H_d);

/// Total control u = energy_shaping + damping_injection, all desired-system
/// quantities evaluated at theta_est.
Vec adaptive_control(const StructureMatrices& structure, const UncertainDecomposition& dec,
                     const DesiredSystem& desired, const ControllerGains& gains,
                     const State& x_k, const State& x_prev, const Vec& theta_est);

}  // namespace idapbc

#endif  // IDAPBC_CONTROLLER_HPP
