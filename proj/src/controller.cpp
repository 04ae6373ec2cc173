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

#include "idapbc/controller.hpp"

namespace idapbc {

namespace {
constexpr double kConditionLimit = 1e12;
}

Mat left_annihilator(const Mat& g) {
    const auto n = g.rows();
    const auto m = g.cols();
    Eigen::ColPivHouseholderQR<Mat> qr(g);
    if (qr.rank() < m) {
        throw ContractViolation("left_annihilator: g is rank deficient");
    }
    const Mat q = qr.householderQ();
    return q.rightCols(n - m).transpose();
}

Vec matching_residual(const StructureMatrices& structure, const UncertainDecomposition& dec,
                      const DesiredSystem& desired, const State& x_k, const State& x_prev,
                      const Vec& theta) {
    const State xbar = extrapolate(x_k, x_prev);
    const Vec grad_plant = uncertain_gradient(dec, xbar, theta);
    const Vec grad_d = desired.grad_H_d(xbar, theta);
    const Mat g = structure.g(x_k);
    const Mat g_perp = left_annihilator(g);
    return g_perp * (desired.J_d(xbar, theta) * grad_d -
                     (structure.J(x_k) - structure.R(x_k)) * grad_plant);
}

namespace {

// (g^T g)^{-1} g^T rhs by linear solve; rejects ill-conditioned g^T g.
Vec input_projection(const Mat& g, const Vec& rhs) {
    const Mat gtg = g.transpose() * g;
    Eigen::JacobiSVD<Mat> svd(gtg, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    if (!(smin > 0.0) || smax / smin > kConditionLimit) {
        throw DomainError("energy_shaping: g^T g is singular or ill-conditioned");
    }
    return svd.solve(g.transpose() * rhs);
}

}  // namespace

Vec energy_shaping(const StructureMatrices& structure, const UncertainDecomposition& dec,
                   const DesiredSystem& desired, const State& x_k, const State& x_prev,
                   const Vec& theta_est) {
    const State xbar = extrapolate(x_k, x_prev);
    const Mat JmR = structure.J(x_k) - structure.R(x_k);
    const Vec target = desired.J_d(xbar, theta_est) * desired.grad_H_d(xbar, theta_est);
    const Vec plant = JmR * uncertain_gradient(dec, xbar, theta_est);
    return input_projection(structure.g(x_k), target - plant);
}

Vec damping_injection(const ControllerGains& gains, const Mat& g, const Vec& grad_H_d) {
    if (grad_H_d.size() != g.rows()) {
        throw ContractViolation("damping_injection: gradient/input-matrix size mismatch");
    }
    return -gains.K_v * (g.transpose() * grad_H_d);
}

Vec adaptive_control(const StructureMatrices& structure, const UncertainDecomposition& dec,
                     const DesiredSystem& desired, const ControllerGains& gains,
                     const State& x_k, const State& x_prev, const Vec& theta_est) {
    const State xbar = extrapolate(x_k, x_prev);
    const Vec u_es = energy_shaping(structure, dec, desired, x_k, x_prev, theta_est);
    const Vec u_di =
        damping_injection(gains, structure.g(x_k), desired.grad_H_d(xbar, theta_est));
    return u_es + u_di;
}

}  // namespace idapbc
