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

#include "idapbc/systems.hpp"

#include <cmath>
#include <sstream>

namespace idapbc {

namespace {

// sin(q)/q, continuous through q = 0; used by the midpoint-rule Q factor.
double sinc(double q) {
    if (std::abs(q) < 1e-8) {
        return 1.0 - q * q / 6.0;
    }
    return std::sin(q) / q;
}

EstimatorGains default_estimator_gains(const Vec& c, double alpha, double delta, int s) {
    EstimatorGains gains;
    gains.c = c;
    gains.alpha = alpha;
    gains.delta = delta;
    gains.P = Mat::Identity(s, s);
    gains.theta_min = Vec::Constant(s, 0.01);
    gains.theta_max = Vec::Constant(s, 100.0);
    return gains;
}

double sign_positive(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

SystemBundle build_pendulum(const PendulumParams& p, double nominal_L) {
    if (!(p.m > 0 && p.L > 0 && p.gravity > 0 && p.k_p > 0 && p.K_v >= 0 && p.c1 > 0 &&
          p.delta > 0 && p.alpha >= 1 && nominal_L > 0)) {
        throw DomainError("build_pendulum: invalid parameters");
    }

    SystemBundle b;
    b.name = "pendulum";
    b.n = 2;
    b.m = 1;
    b.r = 2;
    b.s = 1;
    b.theta_true = Vec::Constant(1, p.L);
    b.theta_nominal = Vec::Constant(1, nominal_L);

    const double mass = p.m, grav = p.gravity, k_p = p.k_p, q_star = p.q_star;

    b.structure.n = 2;
    b.structure.m = 1;
    b.structure.J = [](const State&) { return (Mat(2, 2) << 0, 1, -1, 0).finished(); };
    b.structure.R = [](const State&) { return Mat::Zero(2, 2); };
    b.structure.g = [](const State&) { return (Mat(2, 1) << 0, 1).finished(); };

    // grad H = [m g L sin q; p / (m L^2)], known part zero, phi = [L; 1/L^2].
    b.decomposition.r = 2;
    b.decomposition.s = 1;
    b.decomposition.known_gradient = [](const State&) { return Vec::Zero(2); };
    b.decomposition.regressor_shape = [mass, grav](const State& x) {
        return (Mat(2, 2) << mass * grav * std::sin(x(0)), 0, 0, x(1) / mass).finished();
    };
    b.decomposition.param_map = [](const State&, const Vec& theta) {
        const double L = theta(0);
        if (!(L > 0)) {
            throw DomainError("pendulum phi: length must be positive");
        }
        return (Vec(2) << L, 1.0 / (L * L)).finished();
    };

    b.energy = [mass, grav](const Vec& theta) {
        const double L = theta(0);
        EnergyModel e;
        e.hamiltonian = [mass, grav, L](const State& x) {
            return 0.5 * x(1) * x(1) / (mass * L * L) - mass * grav * L * std::cos(x(0));
        };
        e.gradient = [mass, grav, L](const State& x) {
            return (Vec(2) << mass * grav * L * std::sin(x(0)), x(1) / (mass * L * L))
                .finished();
        };
        e.kind = GradientKind::extrapolated;
        e.q_factor = [mass, grav, L](const State& x) {
            return (Mat(2, 2) << mass * grav * L * sinc(x(0)), 0, 0, 1.0 / (mass * L * L))
                .finished();
        };
        return e;
    };

    // Desired system with M_d = M: J_d stays the canonical symplectic pair
    // and the momentum rows of the matching condition cancel identically.
    const Mat g_const = (Mat(2, 1) << 0, 1).finished();
    b.desired.J_d = [](const State&, const Vec&) {
        return (Mat(2, 2) << 0, 1, -1, 0).finished();
    };
    b.desired.R_d = [g_const, Kv = p.K_v](const State&) {
        return (g_const * Kv * g_const.transpose()).eval();
    };
    b.desired.H_d = [mass, grav, k_p, q_star](const State& x, const Vec& theta) {
        const double L = theta(0);
        const double off = x(0) - q_star - mass * grav * L * std::sin(q_star) / k_p;
        return 0.5 * x(1) * x(1) / (mass * L * L) - mass * grav * L * std::cos(x(0)) +
               0.5 * k_p * off * off;
    };
    b.desired.grad_H_d = [mass, grav, k_p, q_star](const State& x, const Vec& theta) {
        const double L = theta(0);
        const double off = x(0) - q_star - mass * grav * L * std::sin(q_star) / k_p;
        return (Vec(2) << mass * grav * L * std::sin(x(0)) + k_p * off,
                x(1) / (mass * L * L))
            .finished();
    };
    b.desired.x_star = (State(2) << q_star, 0).finished();

    b.K_gain = [c1 = p.c1](const State&, const Vec&) {
        return (Mat(1, 2) << c1, 0).finished();
    };
    b.controller_gains.K_v = Mat::Constant(1, 1, p.K_v);
    b.estimator_gains =
        default_estimator_gains(Vec::Constant(1, p.c1), p.alpha, p.delta, 1);

    auto check_kp = [&](double L, const char* label) {
        if (!(p.k_p > p.m * p.gravity * L)) {
            std::ostringstream msg;
            msg << "pendulum: k_p = " << p.k_p << " does not exceed m*g*L = "
                << p.m * p.gravity * L << " (" << label << " L = " << L
                << "); desired potential may lose its minimum at q*";
            b.warnings.push_back(msg.str());
        }
    };
    check_kp(p.L, "true");
    check_kp(nominal_L, "nominal");
    b.stall_manifold = "sin(qbar) = 0";
    return b;
}

SystemBundle build_wheel(const WheelParams& p, const Vec& nominal_theta) {
    if (!(p.a1 > 0) || !(p.a1 * p.a3 > p.a2 * p.a2) || !(p.a1 + p.a2 < 0)) {
        throw DomainError(
            "build_wheel: desired inertia constraints a1 > 0, a1 a3 > a2^2, a1 + a2 < 0 "
            "violated");
    }
    if (!(p.I1 > 0 && p.I2 > 0 && p.k1 > 0 && p.m > 0 && p.L > 0 && p.gravity > 0 &&
          p.c1 > 0 && p.c2 > 0 && p.delta > 0 && p.alpha >= 1)) {
        throw DomainError("build_wheel: invalid parameters");
    }
    if (nominal_theta.size() != 2 || !(nominal_theta.minCoeff() > 0)) {
        throw DomainError("build_wheel: nominal inertias must be two positive values");
    }

    SystemBundle b;
    b.name = "wheel";
    b.n = 4;
    b.m = 1;
    b.r = 2;
    b.s = 2;
    b.theta_true = (Vec(2) << p.I1, p.I2).finished();
    b.theta_nominal = nominal_theta;

    const double m3 = p.m3(), k1 = p.k1, k2 = p.k2();
    const double a1 = p.a1, a2 = p.a2, a3 = p.a3;

    b.structure.n = 4;
    b.structure.m = 1;
    b.structure.J = [](const State&) {
        Mat J = Mat::Zero(4, 4);
        J.topRightCorner(2, 2) = Mat::Identity(2, 2);
        J.bottomLeftCorner(2, 2) = -Mat::Identity(2, 2);
        return J;
    };
    b.structure.R = [](const State&) { return Mat::Zero(4, 4); };
    b.structure.g = [](const State&) { return (Mat(4, 1) << 0, 0, -1, 1).finished(); };

    // grad H = [-m3 sin q1; 0; p1/I1; p2/I2]; only the momentum rows carry
    // the unknown inertias, phi = [1/I1; 1/I2].
    b.decomposition.r = 2;
    b.decomposition.s = 2;
    b.decomposition.known_gradient = [m3](const State& x) {
        return (Vec(4) << -m3 * std::sin(x(0)), 0, 0, 0).finished();
    };
    b.decomposition.regressor_shape = [](const State& x) {
        return (Mat(4, 2) << 0, 0, 0, 0, x(2), 0, 0, x(3)).finished();
    };
    b.decomposition.param_map = [](const State&, const Vec& theta) {
        if (!(theta(0) > 0 && theta(1) > 0)) {
            throw DomainError("wheel phi: inertias must be positive");
        }
        return (Vec(2) << 1.0 / theta(0), 1.0 / theta(1)).finished();
    };

    b.energy = [m3](const Vec& theta) {
        const double I1 = theta(0), I2 = theta(1);
        EnergyModel e;
        e.hamiltonian = [m3, I1, I2](const State& x) {
            return 0.5 * x(2) * x(2) / I1 + 0.5 * x(3) * x(3) / I2 +
                   m3 * (std::cos(x(0)) - 1.0);
        };
        e.gradient = [m3, I1, I2](const State& x) {
            return (Vec(4) << -m3 * std::sin(x(0)), 0, x(2) / I1, x(3) / I2).finished();
        };
        e.kind = GradientKind::extrapolated;
        e.q_factor = [m3, I1, I2](const State& x) {
            Mat q = Mat::Zero(4, 4);
            q(0, 0) = -m3 * sinc(x(0));
            q(2, 2) = 1.0 / I1;
            q(3, 3) = 1.0 / I2;
            return q;
        };
        return e;
    };

    // gamma2 and the desired potential coefficient follow the inertias, so
    // the adaptive controller refreshes them from theta_est every step.
    auto gamma2 = [a1, a2, a3](const Vec& theta) {
        return -theta(0) * (a2 + a3) / (theta(1) * (a1 + a2));
    };
    b.desired.J_d = [a1, a2, a3](const State&, const Vec& theta) {
        const Mat Md = (Mat(2, 2) << a1, a2, a2, a3).finished();
        const Mat Minv = (Mat(2, 2) << 1.0 / theta(0), 0, 0, 1.0 / theta(1)).finished();
        Mat Jd = Mat::Zero(4, 4);
        Jd.topRightCorner(2, 2) = Minv * Md;
        Jd.bottomLeftCorner(2, 2) = -(Md * Minv);
        return Jd;
    };
    const Mat g_const = (Mat(4, 1) << 0, 0, -1, 1).finished();
    b.desired.R_d = [g_const, Kv = p.K_v](const State&) {
        return (g_const * Kv * g_const.transpose()).eval();
    };
    b.desired.H_d = [m3, k1, k2, a1, a2, a3, gamma2](const State& x, const Vec& theta) {
        const double g2 = gamma2(theta);
        const double kin =
            (a3 * x(2) * x(2) - 2 * a2 * x(2) * x(3) + a1 * x(3) * x(3)) / (2 * k2);
        const double pot = theta(0) * m3 / (a1 + a2) * (std::cos(x(0)) - 1.0) +
                           0.5 * k1 * (x(1) + g2 * x(0)) * (x(1) + g2 * x(0));
        return kin + pot;
    };
    b.desired.grad_H_d = [m3, k1, k2, a1, a2, a3, gamma2](const State& x, const Vec& theta) {
        const double g2 = gamma2(theta);
        const double lever = x(1) + g2 * x(0);
        return (Vec(4) << -theta(0) * m3 / (a1 + a2) * std::sin(x(0)) + k1 * g2 * lever,
                k1 * lever, (a3 * x(2) - a2 * x(3)) / k2, (a1 * x(3) - a2 * x(2)) / k2)
            .finished();
    };
    b.desired.x_star = State::Zero(4);

    b.K_gain = [c1 = p.c1, c2 = p.c2](const State&, const Vec& theta_est) {
        return (Mat(2, 2) << -c1 * sign_positive(theta_est(0)), 0, 0,
                -c2 * sign_positive(theta_est(1)))
            .finished();
    };
    b.controller_gains.K_v = Mat::Constant(1, 1, p.K_v);
    b.estimator_gains = default_estimator_gains((Vec(2) << p.c1, p.c2).finished(), p.alpha,
                                                p.delta, 2);
    b.stall_manifold = "pbar_1 = 0 (component 1), pbar_2 = 0 (component 2)";
    return b;
}

Mat pendulum_beta_gain(const State& xbar, const Vec& theta_est, const PendulumParams& params,
                       double T) {
    const SystemBundle b = build_pendulum(params, params.L);
    return beta_matrix(b.structure, b.decomposition, b.K_gain, b.estimator_gains, xbar,
                       theta_est, T);
}

Mat wheel_beta_gain(const State& xbar, const Vec& theta_est, const WheelParams& params,
                    double T) {
    const SystemBundle b = build_wheel(params, (Vec(2) << params.I1, params.I2).finished());
    return beta_matrix(b.structure, b.decomposition, b.K_gain, b.estimator_gains, xbar,
                       theta_est, T);
}

}  // namespace idapbc
