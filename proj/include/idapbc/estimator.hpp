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

#ifndef IDAPBC_ESTIMATOR_HPP
#define IDAPBC_ESTIMATOR_HPP

#include <functional>
#include <optional>

#include "idapbc/model.hpp"
#include "idapbc/types.hpp"

namespace idapbc {

/// Per-system gain shape K(x, theta_est), s-by-r, entering the estimator
/// correction beta = K A^T / (alpha (sigma_max(A^T A) + 1)).
using GainShape = std::function<Mat(const State& xbar, const Vec& theta_est)>;

/// Free constants of the immersion-and-invariance estimator.
struct EstimatorGains {
    Vec c;             ///< positive scalars c_i inside the gain shape
    double alpha = 1;  ///< >= 1, scales the normalizing denominator
    Mat P;             ///< s-by-s symmetric positive definite weight
    Vec theta_min;     ///< componentwise lower clamp on extracted estimates
    Vec theta_max;     ///< componentwise upper clamp
    double delta = 1e-3;  ///< regularizer of the state-dependent gain formulas
};

/**
 * @brief Internal estimator state.
 *
 * The estimate is extracted as theta_hat + beta_prev x_k, where beta_prev is
 * the correction matrix evaluated on the previous state pair (and the
 * estimate available then). Storing it keeps extraction and update using the
 * identical matrix, which the error recursion requires exactly.
 */
struct EstimatorState {
    Vec theta_hat;
    State x_prev;
    Mat beta_prev;  // s-by-n
    int k = 0;
};

/// Regressor A = T (J - R) Pi, all factors at the evaluation point xbar.
Mat regressor(const StructureMatrices& structure, const UncertainDecomposition& dec,
              const State& xbar, double T);

/// Correction matrix beta = K(xbar, theta_est) A^T / (alpha (sigma_max(A^T A) + 1)).
Mat beta_matrix(const StructureMatrices& structure, const UncertainDecomposition& dec,
                const GainShape& K, const EstimatorGains& gains, const State& xbar,
                const Vec& theta_est, double T);

/// Componentwise clamp to [theta_min, theta_max].
Vec clamp_estimate(const Vec& theta, const EstimatorGains& gains);

/// Estimator state whose first extraction at x0 yields clamp(theta_est0).
EstimatorState make_estimator(const StructureMatrices& structure,
                              const UncertainDecomposition& dec, const GainShape& K,
                              const EstimatorGains& gains, const State& x0,
                              const Vec& theta_est0, double T);

/// Raw extraction theta_hat + beta_prev x_k (no clamp); the error bookkeeping
/// z = theta_est - theta uses this value.
Vec extract_raw(const EstimatorState& est, const State& x_k);

/// Clamped extraction; this is the estimate the controller and the update
/// law consume.
Vec extract_estimate(const EstimatorState& est, const EstimatorGains& gains, const State& x_k);

/**
 * @brief One estimator update.
 *
 * @p x_k is the plant state the input @p u_k was applied at. The update
 * subtracts the known-drift prediction so that the estimation error obeys
 * z_{k+1} - z_k = beta A [phi(theta) - phi(theta_est)].
 * Throws NumericalBlowup if theta_hat leaves the finite range.
 */
EstimatorState update(const EstimatorState& est, const StructureMatrices& structure,
                      const UncertainDecomposition& dec, const GainShape& K,
                      const EstimatorGains& gains, const State& x_k, const Vec& u_k, double T);

/// Test-only: advances the estimation error by the closed-form recursion
/// z_{k+1} = z_k + beta(x) A(x) [phi(x, theta_true) - phi(x, theta_est)].
Vec error_recursion_step(const StructureMatrices& structure, const UncertainDecomposition& dec,
                         const GainShape& K, const EstimatorGains& gains, const State& x_k,
                         const State& x_prev, const Vec& theta_true, const Vec& theta_est,
                         const Vec& z_k, double T);

/// State-dependent c1 that keeps the pendulum contraction factor below one:
/// alpha (sigma_max(A^T A) + 1) / (T^2 m^2 g^2 sin^2(qbar) + delta).
double gain_formula_pendulum(const State& xbar, double T, double m, double grav, double alpha,
                             double delta, const Mat& A);

/// Wheel counterpart, evaluated at the configured parameter lower bound;
/// empty at pbar_i = 0 where the formula is singular. Diagnostic only --
/// runs use the constant gains from the configuration.
std::optional<double> gain_formula_wheel(const State& xbar, double T, const Vec& theta_lower,
                                         double alpha, double delta, const Mat& A, int i);

}  // namespace idapbc

#endif  // IDAPBC_ESTIMATOR_HPP
