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

#ifndef IDAPBC_SYSTEMS_HPP
#define IDAPBC_SYSTEMS_HPP

#include <string>
#include <vector>

#include "idapbc/controller.hpp"
#include "idapbc/estimator.hpp"
#include "idapbc/model.hpp"

namespace idapbc {

/// Planar pendulum: point mass on a rigid massless rod, torque actuated.
/// The rod length is the uncertain parameter.
struct PendulumParams {
    double m = 1.0;        ///< mass [kg]
    double L = 2.0;        ///< rod length [m]; the uncertain parameter
    double gravity = 9.81; ///< [m/s^2]
    double k_p = 40.0;     ///< desired potential gain, wants k_p > m g L
    double q_star = 2.0;   ///< target angle [rad]
    double K_v = 5.0;      ///< damping injection gain
    double c1 = 100.0;     ///< estimator gain
    double alpha = 2.0;    ///< estimator normalizer, >= 1
    double delta = 1e-3;   ///< gain-formula regularizer
};

/// Inertia wheel pendulum: pendulum with a balanced rotor at the tip; the
/// two link inertias are the uncertain parameters.
struct WheelParams {
    double m = 1.0;
    double L = 1.0;
    double gravity = 9.81;
    double I1 = 0.15;  ///< pendulum inertia [kg m^2]; uncertain
    double I2 = 0.08;  ///< wheel inertia [kg m^2]; uncertain
    double a1 = 2.0;   ///< desired inertia entries, need a1 > 0,
    double a2 = -3.0;  ///<   a1 a3 > a2^2, a1 + a2 < 0
    double a3 = 5.0;
    double k1 = 0.214; ///< desired potential gain, > 0
    double K_v = 10.0;
    double c1 = 6.0;
    double c2 = 2.0;
    double alpha = 1.0;
    double delta = 1.0;

    double m3() const { return m * gravity * L; }
    double k2() const { return a1 * a3 - a2 * a2; }
};

/// Everything a scenario needs, wired together: plant structure, uncertain
/// decomposition, full energy at a given parameter, target dynamics, and the
/// estimator gain shape.
struct SystemBundle {
    std::string name;
    int n = 0, m = 0, r = 0, s = 0;
    StructureMatrices structure;
    UncertainDecomposition decomposition;
    std::function<EnergyModel(const Vec& theta)> energy;
    DesiredSystem desired;
    GainShape K_gain;
    ControllerGains controller_gains;
    EstimatorGains estimator_gains;
    Vec theta_true;
    Vec theta_nominal;
    std::vector<std::string> warnings;  ///< soft constraint checks logged at build
    /// Measure-zero set where beta vanishes and the estimate cannot move;
    /// condition reports carry it so "nonnegative" is not mistaken for
    /// "strictly positive".
    std::string stall_manifold;
};

SystemBundle build_pendulum(const PendulumParams& params, double nominal_L);
SystemBundle build_wheel(const WheelParams& params, const Vec& nominal_theta);

/// Correction matrix of the pendulum estimator, K = [c1 0] (1-by-2 beta).
Mat pendulum_beta_gain(const State& xbar, const Vec& theta_est, const PendulumParams& params,
                       double T);

/// Correction matrix of the wheel estimator,
/// K = diag(-c1 sign(theta1_est), -c2 sign(theta2_est)) (2-by-4 beta).
Mat wheel_beta_gain(const State& xbar, const Vec& theta_est, const WheelParams& params,
                    double T);

}  // namespace idapbc

#endif  // IDAPBC_SYSTEMS_HPP
