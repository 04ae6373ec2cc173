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

#ifndef IDAPBC_SIM_HPP
#define IDAPBC_SIM_HPP

#include <optional>
#include <string>
#include <vector>

#include "idapbc/conditions.hpp"
#include "idapbc/systems.hpp"

namespace idapbc {

enum class SystemKind { pendulum, wheel };

/// How the controller obtains its parameter value each step.
enum class Mode {
    adaptive,           ///< immersion-and-invariance estimate
    non_adaptive,       ///< frozen nominal value, no estimator
    oracle,             ///< true value (certainty-equivalent reference run)
    desired_reference,  ///< no plant at all: integrates the target dynamics
};

std::string to_string(Mode mode);
std::string to_string(SystemKind kind);

/// A fully resolved experiment: one system, one mode, one horizon.
struct ScenarioConfig {
    std::string name;
    SystemKind system = SystemKind::pendulum;
    Mode mode = Mode::adaptive;
    PendulumParams pendulum;
    WheelParams wheel;
    Vec theta_nominal;
    Vec theta_est0;
    State x0;
    SamplingConfig sampling;
    DomainSampler sampler;   ///< boxes for the pre-run certification sweeps
    Vec theta_min, theta_max;  ///< optional clamp overrides (empty = defaults)

    SystemBundle make_bundle() const;
    State x_star() const;
};

/// Per-step log of one run. All vectors have steps + 1 entries unless the
/// run blew up, in which case blowup_step records where it was truncated.
struct Trajectory {
    std::string scenario;
    SystemKind system = SystemKind::pendulum;
    Mode mode = Mode::adaptive;
    double T = 0.0;
    int steps = 0;
    std::vector<double> t;
    std::vector<State> x;
    std::vector<Vec> u;
    std::vector<Vec> theta_est;  ///< parameter the controller used (clamped)
    std::vector<Vec> z;          ///< raw estimation error theta_est_raw - theta_true
    std::vector<double> V_z;
    std::vector<double> H_d;     ///< desired energy at the true parameters
    std::vector<State> x_ref;    ///< target-dynamics trajectory from the same x0
    /// Per-transition flags: P-monotonicity and Lipschitz checks at that step
    /// (adaptive mode; other modes hold trivially).
    std::vector<std::uint8_t> checks_pass;
    std::optional<int> blowup_step;
};

struct RunMetrics {
    double final_param_error = 0.0;  ///< ||theta_est(end) - theta_true||
    double final_state_error = 0.0;  ///< ||x(end) - x*||
    double tracking_rms = 0.0;       ///< RMS ||x_k - x_ref_k|| over the final half
    double V_z_monotone_fraction = 0.0;
};

/// Runs one scenario. Numerical blowups truncate the trajectory and are
/// recorded rather than thrown.
Trajectory run_scenario(const ScenarioConfig& cfg);

RunMetrics compute_metrics(const Trajectory& traj, const ScenarioConfig& cfg);

/// Aligned per-step table of several runs of the same experiment.
struct ComparisonTable {
    std::vector<std::string> labels;       ///< mode name per run
    std::vector<double> t;
    std::vector<std::vector<State>> x;     ///< [run][step]
    std::vector<std::vector<Vec>> u;
    std::vector<RunMetrics> metrics;
};

/// Joins runs sharing system, T, steps and x0; anything misaligned throws.
ComparisonTable compare_runs(const std::vector<Trajectory>& trajs,
                             const std::vector<ScenarioConfig>& cfgs);

}  // namespace idapbc

#endif  // IDAPBC_SIM_HPP
