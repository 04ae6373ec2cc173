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

#ifndef IDAPBC_CONDITIONS_HPP
#define IDAPBC_CONDITIONS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "idapbc/estimator.hpp"
#include "idapbc/model.hpp"
#include "idapbc/types.hpp"

namespace idapbc {

/**
 * @brief Seeded uniform sampling boxes for the certification sweeps.
 *
 * Every sample is generated from (seed, sample index) alone, so results do
 * not depend on execution order and the parallel and serial sweep kernels
 * produce identical reports.
 */
struct DomainSampler {
    std::vector<std::array<double, 2>> state_box;  ///< per state dimension [lo, hi]
    std::vector<std::array<double, 2>> theta_box;  ///< per parameter [lo, hi]
    std::int64_t count = 10000;
    std::uint64_t seed = 0;

    void validate() const;
    State draw_state(std::int64_t sample) const;
    /// Draws the (theta_a, theta_b) pair of a sample; theta_b resampled while
    /// exactly equal to theta_a.
    std::pair<Vec, Vec> draw_theta_pair(std::int64_t sample) const;
};

/// One sweep sample that violated a condition.
struct ConditionViolation {
    std::int64_t sample = 0;
    State x;
    Vec theta_a, theta_b;
    double value = 0.0;
};

/// Outcome of a certification sweep.
struct ConditionReport {
    std::string check;                       ///< "p_monotone" or "lipschitz"
    std::int64_t samples_checked = 0;
    double worst_value = 0.0;                ///< min monotone value / max ratio
    std::int64_t violation_count = 0;
    std::vector<ConditionViolation> violations;  ///< first few, by sample index
    bool passed = false;
    DomainSampler sampler;                   ///< echo of the boxes swept
};

/// Parameterized estimator map psi(x, theta) = beta(x) A(x) phi(x, theta).
Vec psi(const StructureMatrices& structure, const UncertainDecomposition& dec,
        const GainShape& K, const EstimatorGains& gains, const State& x, const Vec& theta,
        double T);

/// Sweeps (theta_a - theta_b)^T P [psi(x, theta_a) - psi(x, theta_b)] over the
/// sampler boxes; passes when no sample goes below -1e-12.
ConditionReport check_p_monotone(const StructureMatrices& structure,
                                 const UncertainDecomposition& dec, const GainShape& K,
                                 const EstimatorGains& gains, const DomainSampler& sampler,
                                 double T, bool parallel = true);

/// Estimates the Lipschitz constant of psi in theta over the sampler boxes;
/// passes when the largest ratio stays below one.
ConditionReport check_lipschitz(const StructureMatrices& structure,
                                const UncertainDecomposition& dec, const GainShape& K,
                                const EstimatorGains& gains, const DomainSampler& sampler,
                                double T, bool parallel = true);

struct LyapunovTrace {
    std::vector<double> V;   ///< z_k^T P z_k per logged step
    std::vector<double> dV;  ///< V_{k+1} - V_k per transition
};

/// V_z trace of a logged estimation-error sequence.
LyapunovTrace lyapunov_trace(const std::vector<Vec>& z, const Mat& P);

/// Desired energy evaluated with the true parameters along a state sequence.
std::vector<double> closed_loop_energy_trace(const std::vector<State>& x,
                                             const std::function<double(const State&, const Vec&)>& H_d,
                                             const Vec& theta_true);

}  // namespace idapbc

#endif  // IDAPBC_CONDITIONS_HPP
