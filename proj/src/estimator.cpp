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

#include "idapbc/estimator.hpp"

#include <cmath>
#include <string>

namespace idapbc {

Mat regressor(const StructureMatrices& structure, const UncertainDecomposition& dec,
              const State& xbar, double T) {
    return T * ((structure.J(xbar) - structure.R(xbar)) * dec.regressor_shape(xbar));
}

namespace {

double spectral_bound(const Mat& A) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(A.transpose() * A);
    return std::max(eig.eigenvalues().maxCoeff(), 0.0);
}

Mat beta_from_regressor(const Mat& K, const Mat& A, double alpha) {
    return K * A.transpose() / (alpha * (spectral_bound(A) + 1.0));
}

}  // namespace

Mat beta_matrix(const StructureMatrices& structure, const UncertainDecomposition& dec,
                const GainShape& K, const EstimatorGains& gains, const State& xbar,
                const Vec& theta_est, double T) {
    const Mat A = regressor(structure, dec, xbar, T);
    return beta_from_regressor(K(xbar, theta_est), A, gains.alpha);
}

Vec clamp_estimate(const Vec& theta, const EstimatorGains& gains) {
    return theta.cwiseMax(gains.theta_min).cwiseMin(gains.theta_max);
}

EstimatorState make_estimator(const StructureMatrices& structure,
                              const UncertainDecomposition& dec, const GainShape& K,
                              const EstimatorGains& gains, const State& x0,
                              const Vec& theta_est0, double T) {
    // x_{-1} := x_0, so the first evaluation point is x_0 itself.
    const State xbar = extrapolate(x0, x0);
    const Mat beta0 = beta_matrix(structure, dec, K, gains, xbar,
                                  clamp_estimate(theta_est0, gains), T);
    EstimatorState est;
    est.theta_hat = theta_est0 - beta0 * x0;
    est.x_prev = x0;
    est.beta_prev = beta0;
    est.k = 0;
    return est;
}

Vec extract_raw(const EstimatorState& est, const State& x_k) {
    return est.theta_hat + est.beta_prev * x_k;
}

Vec extract_estimate(const EstimatorState& est, const EstimatorGains& gains, const State& x_k) {
    return clamp_estimate(extract_raw(est, x_k), gains);
}

EstimatorState update(const EstimatorState& est, const StructureMatrices& structure,
                      const UncertainDecomposition& dec, const GainShape& K,
                      const EstimatorGains& gains, const State& x_k, const Vec& u_k, double T) {
    const Vec theta_est = extract_estimate(est, gains, x_k);
    const State xbar = extrapolate(x_k, est.x_prev);
    const Mat A = regressor(structure, dec, xbar, T);
    const Mat beta_k = beta_from_regressor(K(xbar, theta_est), A, gains.alpha);

    const Vec drift = T * ((structure.J(x_k) - structure.R(x_k)) * dec.known_gradient(xbar)) +
                      T * (structure.g(x_k) * u_k) + x_k;
    EstimatorState next;
    next.theta_hat = est.theta_hat + est.beta_prev * x_k - beta_k * drift -
                     beta_k * (A * dec.param_map(xbar, theta_est));
    if (!next.theta_hat.allFinite()) {
        throw NumericalBlowup("estimator update: non-finite theta_hat at step " +
                                  std::to_string(est.k),
                              est.k);
    }
    next.x_prev = x_k;
    next.beta_prev = beta_k;
    next.k = est.k + 1;
    return next;
}

Vec error_recursion_step(const StructureMatrices& structure, const UncertainDecomposition& dec,
                         const GainShape& K, const EstimatorGains& gains, const State& x_k,
                         const State& x_prev, const Vec& theta_true, const Vec& theta_est,
                         const Vec& z_k, double T) {
    const State xbar = extrapolate(x_k, x_prev);
    const Mat A = regressor(structure, dec, xbar, T);
    const Mat beta_k = beta_from_regressor(K(xbar, theta_est), A, gains.alpha);
    return z_k + beta_k * (A * (dec.param_map(xbar, theta_true) -
                                dec.param_map(xbar, theta_est)));
}

double gain_formula_pendulum(const State& xbar, double T, double m, double grav, double alpha,
                             double delta, const Mat& A) {
    const double sq = std::sin(xbar(0));
    const double denom = T * T * m * m * grav * grav * sq * sq + delta;
    return alpha * (spectral_bound(A) + 1.0) / denom;
}

std::optional<double> gain_formula_wheel(const State& xbar, double T, const Vec& theta_lower,
                                         double alpha, double delta, const Mat& A, int i) {
    const double pbar_i = xbar(2 + i);
    if (pbar_i == 0.0) {
        return std::nullopt;
    }
    // theta_i and theta_i_est both at the configured lower bound; larger
    // actual values only shrink the resulting contraction factor.
    const double bound = theta_lower(i);
    return alpha * (spectral_bound(A) + 1.0) * bound * bound /
           (T * T * pbar_i * pbar_i * (delta + 1.0));
}

}  // namespace idapbc
