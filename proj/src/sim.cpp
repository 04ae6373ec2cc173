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

#include "idapbc/sim.hpp"

#include <cmath>

#include "idapbc/controller.hpp"
#include "idapbc/estimator.hpp"

namespace idapbc {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::adaptive: return "adaptive";
        case Mode::non_adaptive: return "non_adaptive";
        case Mode::oracle: return "oracle";
        case Mode::desired_reference: return "desired_reference";
    }
    return "unknown";
}

std::string to_string(SystemKind kind) {
    return kind == SystemKind::pendulum ? "pendulum" : "wheel";
}

SystemBundle ScenarioConfig::make_bundle() const {
    SystemBundle bundle = system == SystemKind::pendulum
                              ? build_pendulum(pendulum, theta_nominal(0))
                              : build_wheel(wheel, theta_nominal);
    if (theta_min.size() == bundle.s) {
        bundle.estimator_gains.theta_min = theta_min;
    }
    if (theta_max.size() == bundle.s) {
        bundle.estimator_gains.theta_max = theta_max;
    }
    return bundle;
}

State ScenarioConfig::x_star() const {
    if (system == SystemKind::pendulum) {
        return (State(2) << pendulum.q_star, 0.0).finished();
    }
    return State::Zero(4);
}

namespace {

constexpr double kCheckTolerance = 1e-12;

struct StepChecks {
    bool pass = true;
};

// Monotonicity and Lipschitz hypotheses evaluated on the (theta_true,
// theta_est) pair actually realized at this step.
StepChecks per_step_checks(const SystemBundle& b, const State& xbar, const Vec& theta_true,
                           const Vec& theta_est, double T) {
    const Mat A = regressor(b.structure, b.decomposition, xbar, T);
    const Mat beta = beta_matrix(b.structure, b.decomposition, b.K_gain, b.estimator_gains,
                                 xbar, theta_est, T);
    const Vec dpsi = beta * (A * (b.decomposition.param_map(xbar, theta_true) -
                                  b.decomposition.param_map(xbar, theta_est)));
    const Vec diff = theta_true - theta_est;
    StepChecks checks;
    const double monotone = diff.dot(b.estimator_gains.P * dpsi);
    if (monotone < -kCheckTolerance) {
        checks.pass = false;
    }
    const double dn = diff.norm();
    if (dn > 0.0 && !(dpsi.norm() / dn <= 1.0 + kCheckTolerance)) {
        checks.pass = false;
    }
    return checks;
}

}  // namespace

Trajectory run_scenario(const ScenarioConfig& cfg) {
    if (!(cfg.sampling.T > 0.0) || cfg.sampling.steps < 1) {
        throw ContractViolation("run_scenario: need T > 0 and steps >= 1");
    }
    const SystemBundle bundle = cfg.make_bundle();
    if (cfg.x0.size() != bundle.n) {
        throw ContractViolation("run_scenario: x0 dimension mismatch");
    }
    const double T = cfg.sampling.T;
    const int steps = cfg.sampling.steps;
    const Vec theta_true = bundle.theta_true;
    const Mat P = bundle.estimator_gains.P;

    Trajectory traj;
    traj.scenario = cfg.name;
    traj.system = cfg.system;
    traj.mode = cfg.mode;
    traj.T = T;
    traj.steps = steps;

    // The reference recursion runs alongside every mode with its own history.
    State x_ref = cfg.x0, x_ref_prev = cfg.x0;
    State x = cfg.x0, x_prev = cfg.x0;

    std::optional<EstimatorState> est;
    if (cfg.mode == Mode::adaptive) {
        est = make_estimator(bundle.structure, bundle.decomposition, bundle.K_gain,
                             bundle.estimator_gains, cfg.x0, cfg.theta_est0, T);
    }

    for (int k = 0; k <= steps; ++k) {
        const State xbar = extrapolate(x, x_prev);
        Vec theta_raw;
        switch (cfg.mode) {
            case Mode::adaptive: theta_raw = extract_raw(*est, x); break;
            case Mode::non_adaptive: theta_raw = bundle.theta_nominal; break;
            default: theta_raw = theta_true; break;
        }
        const Vec theta_used = clamp_estimate(theta_raw, bundle.estimator_gains);

        Vec u = Vec::Zero(bundle.m);
        if (cfg.mode != Mode::desired_reference) {
            u = adaptive_control(bundle.structure, bundle.decomposition, bundle.desired,
                                 bundle.controller_gains, x, x_prev, theta_used);
        }

        const Vec z = theta_raw - theta_true;
        traj.t.push_back(k * T);
        traj.x.push_back(x);
        traj.u.push_back(u);
        traj.theta_est.push_back(theta_used);
        traj.z.push_back(z);
        traj.V_z.push_back(z.dot(P * z));
        traj.H_d.push_back(bundle.desired.H_d(x, theta_true));
        traj.x_ref.push_back(x_ref);
        if (k == steps) {
            break;
        }

        try {
            State x_next;
            if (cfg.mode == Mode::desired_reference) {
                const Vec grad_d = bundle.desired.discrete_gradient(x, x_prev, theta_true);
                x_next = x + T * ((bundle.desired.J_d(xbar, theta_true) -
                                   bundle.desired.R_d(xbar)) *
                                  grad_d);
                if (!x_next.allFinite()) {
                    throw NumericalBlowup("desired reference: non-finite state", k);
                }
            } else {
                const Vec grad = uncertain_gradient(bundle.decomposition, xbar, theta_true);
                x_next = plant_step(bundle.structure, grad, x, u, T, k);
            }
            if (cfg.mode == Mode::adaptive) {
                traj.checks_pass.push_back(
                    per_step_checks(bundle, xbar, theta_true, theta_used, T).pass ? 1 : 0);
                est = update(*est, bundle.structure, bundle.decomposition, bundle.K_gain,
                             bundle.estimator_gains, x, u, T);
            } else {
                traj.checks_pass.push_back(1);
            }
            x_prev = x;
            x = x_next;
        } catch (const NumericalBlowup& blowup) {
            traj.blowup_step = blowup.step >= 0 ? blowup.step : k;
            return traj;
        }

        const State xrbar = extrapolate(x_ref, x_ref_prev);
        const Vec grad_ref = bundle.desired.discrete_gradient(x_ref, x_ref_prev, theta_true);
        State ref_next =
            x_ref +
            T * ((bundle.desired.J_d(xrbar, theta_true) - bundle.desired.R_d(xrbar)) *
                 grad_ref);
        x_ref_prev = x_ref;
        x_ref = ref_next;
    }
    return traj;
}

RunMetrics compute_metrics(const Trajectory& traj, const ScenarioConfig& cfg) {
    RunMetrics metrics;
    if (traj.x.empty()) {
        return metrics;
    }
    const SystemBundle bundle = cfg.make_bundle();
    metrics.final_param_error = (traj.theta_est.back() - bundle.theta_true).norm();
    metrics.final_state_error = (traj.x.back() - cfg.x_star()).norm();

    const std::size_t n = traj.x.size();
    const std::size_t half = n / 2;
    double acc = 0.0;
    for (std::size_t k = half; k < n; ++k) {
        acc += (traj.x[k] - traj.x_ref[k]).squaredNorm();
    }
    metrics.tracking_rms = std::sqrt(acc / static_cast<double>(n - half));

    if (traj.V_z.size() > 1) {
        const double slack = 1e-9 * traj.V_z.front();
        std::size_t monotone = 0;
        for (std::size_t k = 0; k + 1 < traj.V_z.size(); ++k) {
            if (traj.V_z[k + 1] - traj.V_z[k] <= slack) {
                ++monotone;
            }
        }
        metrics.V_z_monotone_fraction =
            static_cast<double>(monotone) / static_cast<double>(traj.V_z.size() - 1);
    } else {
        metrics.V_z_monotone_fraction = 1.0;
    }
    return metrics;
}

ComparisonTable compare_runs(const std::vector<Trajectory>& trajs,
                             const std::vector<ScenarioConfig>& cfgs) {
    if (trajs.empty() || trajs.size() != cfgs.size()) {
        throw ContractViolation("compare_runs: need matching run/config lists");
    }
    const Trajectory& first = trajs.front();
    for (std::size_t i = 1; i < trajs.size(); ++i) {
        const Trajectory& t = trajs[i];
        const bool aligned = t.system == first.system && t.T == first.T &&
                             t.steps == first.steps && !t.x.empty() && !first.x.empty() &&
                             (t.x.front().array() == first.x.front().array()).all();
        if (!aligned) {
            throw ContractViolation("compare_runs: runs are not aligned");
        }
    }
    ComparisonTable table;
    table.t = first.t;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        table.labels.push_back(to_string(trajs[i].mode));
        table.x.push_back(trajs[i].x);
        table.u.push_back(trajs[i].u);
        table.metrics.push_back(compute_metrics(trajs[i], cfgs[i]));
    }
    return table;
}

}  // namespace idapbc
