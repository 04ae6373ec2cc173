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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "idapbc/conditions.hpp"
#include "idapbc/controller.hpp"
#include "idapbc/estimator.hpp"
#include "idapbc/orchestrator.hpp"
#include "idapbc/output.hpp"
#include "idapbc/scenario.hpp"
#include "idapbc/sim.hpp"

namespace {

using namespace idapbc;
namespace fs = std::filesystem;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::optional<double> time_limit_s;
    std::function<Outcome()> run;
};

ScenarioConfig preset_config(const std::string& name, Mode mode) {
    ScenarioConfig cfg = parse_config_text(preset_text(name), name).entries.front().base;
    cfg.mode = mode;
    return cfg;
}

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.3g", v);
    return buffer;
}

// ---------------------------------------------------------------------------
// 1. Discrete-gradient consistency on both systems.
Outcome consistency() {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    double worst = 0.0;
    for (const std::string name : {"pendulum-4.1.2", "wheel-4.2.2"}) {
        const SystemBundle b = preset_config(name, Mode::oracle).make_bundle();
        const EnergyModel extrapolated = b.energy(b.theta_true);
        EnergyModel midpoint = extrapolated;
        midpoint.kind = GradientKind::midpoint;
        for (int i = 0; i < 1000; ++i) {
            State x(b.n);
            for (int j = 0; j < b.n; ++j) x(j) = dist(rng);
            const Vec grad = extrapolated.gradient(x);
            worst = std::max(worst,
                             (discrete_gradient(extrapolated, x, x) - grad).norm());
            worst = std::max(worst, (discrete_gradient(midpoint, x, x) - grad).norm());
        }
    }
    return {worst <= 1e-12, "max |dgrad(x,x) - grad(x)| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 2. Midpoint energy-difference residual is third order (halving ratio in [6, 10]).
Outcome midpoint_order() {
    const SystemBundle b =
        preset_config("pendulum-4.1.2", Mode::oracle).make_bundle();
    EnergyModel model = b.energy(b.theta_true);
    model.kind = GradientKind::midpoint;
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> qdist(-2.0, 2.0);
    std::normal_distribution<double> ndist;
    double lo = 1e300, hi = 0.0;
    int trials = 0;
    while (trials < 100) {
        State x(2);
        x << qdist(rng), qdist(rng);
        Vec d(2);
        d << ndist(rng), ndist(rng);
        d.normalize();
        if (std::abs(d(0)) < 0.2 || std::abs(std::sin(x(0))) < 0.1) continue;
        ++trials;
        auto residual = [&](double h) {
            const State step = x + h * d;
            const Vec grad = discrete_gradient(model, x, step);
            return std::abs(grad.dot(step - x) -
                            (model.hamiltonian(step) - model.hamiltonian(x)));
        };
        const double ratio = residual(1e-2) / residual(5e-3);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo >= 6.0 && hi <= 10.0,
            "halving ratios in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

// ---------------------------------------------------------------------------
// 3. Direct vs recursive estimation error along both adaptive preset runs.
Outcome estimator_equivalence() {
    double worst = 0.0;
    for (const std::string name : {"pendulum-4.1.2", "wheel-4.2.2"}) {
        const ScenarioConfig cfg = preset_config(name, Mode::adaptive);
        const SystemBundle b = cfg.make_bundle();
        const Trajectory traj = run_scenario(cfg);
        if (traj.blowup_step) {
            return {false, name + " blew up at step " + std::to_string(*traj.blowup_step)};
        }
        Vec z = traj.z.front();
        State x_prev = cfg.x0;
        for (std::size_t k = 0; k + 1 < traj.x.size(); ++k) {
            worst = std::max(worst, (z - traj.z[k]).cwiseAbs().maxCoeff());
            z = error_recursion_step(b.structure, b.decomposition, b.K_gain,
                                     b.estimator_gains, traj.x[k], x_prev, b.theta_true,
                                     traj.theta_est[k], z, cfg.sampling.T);
            x_prev = traj.x[k];
        }
        worst = std::max(worst, (z - traj.z.back()).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10, "max |z_direct - z_recursion| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 4. Condition certification with the state-dependent pendulum gain, and the
//    adversarial tenfold gain that must fail.
Outcome condition_certification() {
    const ScenarioConfig cfg = preset_config("pendulum-4.1.2", Mode::adaptive);
    const SystemBundle b = cfg.make_bundle();
    const double T = cfg.sampling.T;
    DomainSampler sampler;
    sampler.state_box = {{-M_PI, M_PI}, {-3.0, 3.0}};
    sampler.theta_box = {{0.5, 5.0}};
    sampler.count = 10000;
    sampler.seed = 42;

    auto formula_gain = [&](double multiplier) -> GainShape {
        const EstimatorGains gains = b.estimator_gains;
        const StructureMatrices structure = b.structure;
        const UncertainDecomposition dec = b.decomposition;
        return [structure, dec, gains, T, multiplier](const State& xbar, const Vec&) {
            const Mat A = regressor(structure, dec, xbar, T);
            const double c1 = multiplier * gain_formula_pendulum(xbar, T, 1.0, 9.81,
                                                                 gains.alpha, gains.delta,
                                                                 A);
            return (Mat(1, 2) << c1, 0.0).finished();
        };
    };

    const ConditionReport monotone =
        check_p_monotone(b.structure, b.decomposition, formula_gain(1.0),
                         b.estimator_gains, sampler, T);
    const ConditionReport lipschitz =
        check_lipschitz(b.structure, b.decomposition, formula_gain(1.0),
                        b.estimator_gains, sampler, T);
    const ConditionReport adversarial =
        check_lipschitz(b.structure, b.decomposition, formula_gain(10.0),
                        b.estimator_gains, sampler, T);
    const bool pass = monotone.passed && monotone.worst_value >= -1e-12 &&
                      lipschitz.passed && lipschitz.worst_value < 1.0 &&
                      !adversarial.passed && adversarial.worst_value >= 1.0;
    return {pass, "monotone min = " + fmt(monotone.worst_value) +
                      ", L_hat = " + fmt(lipschitz.worst_value) +
                      ", adversarial L_hat = " + fmt(adversarial.worst_value)};
}

// ---------------------------------------------------------------------------
// 5. Pendulum adaptive convergence with the certified Lyapunov decrease.
Outcome pendulum_convergence() {
    const ScenarioConfig cfg = preset_config("pendulum-4.1.2", Mode::adaptive);
    const Trajectory traj = run_scenario(cfg);
    if (traj.blowup_step) {
        return {false, "blowup at step " + std::to_string(*traj.blowup_step)};
    }
    const double theta_err = std::abs(traj.theta_est.back()(0) - 2.0);
    const double q_err = std::abs(traj.x.back()(0) - 2.0);
    const double slack = 1e-9 * traj.V_z.front();
    bool vz_ok = true;
    for (std::size_t k = 0; k + 1 < traj.V_z.size(); ++k) {
        if (traj.checks_pass[k] && traj.V_z[k + 1] - traj.V_z[k] > slack) {
            vz_ok = false;
        }
    }
    const bool pass = theta_err <= 0.04 && q_err <= 0.01 && vz_ok;
    return {pass, "|theta_end - 2| = " + fmt(theta_err) + " (<= 0.04), |q_end - 2| = " +
                      fmt(q_err) + " (<= 0.01), V_z decrease " +
                      (vz_ok ? "certified" : "VIOLATED")};
}

// ---------------------------------------------------------------------------
// 6. Wheel adaptive convergence.
Outcome wheel_convergence() {
    const ScenarioConfig cfg = preset_config("wheel-4.2.2", Mode::adaptive);
    const Trajectory traj = run_scenario(cfg);
    if (traj.blowup_step) {
        return {false, "blowup at step " + std::to_string(*traj.blowup_step)};
    }
    const Vec theta_true = (Vec(2) << 0.15, 0.08).finished();
    bool param_ok = true;
    double worst_rel = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double rel =
            std::abs(traj.theta_est.back()(i) - theta_true(i)) / theta_true(i);
        worst_rel = std::max(worst_rel, rel);
        param_ok &= rel <= 0.05;
    }
    const double x_inf = traj.x.back().cwiseAbs().maxCoeff();
    return {param_ok && x_inf <= 0.02,
            "max componentwise param error = " + fmt(worst_rel * 100) +
                "% (<= 5%), |x_end|_inf = " + fmt(x_inf) + " (<= 0.02)"};
}

// ---------------------------------------------------------------------------
// 7. True-parameter closed loop matches the target recursion stepwise.
Outcome oracle_matching() {
    const Trajectory oracle = run_scenario(preset_config("pendulum-4.1.2", Mode::oracle));
    const Trajectory desired =
        run_scenario(preset_config("pendulum-4.1.2", Mode::desired_reference));
    double worst = 0.0;
    for (std::size_t k = 0; k < oracle.x.size(); ++k) {
        worst = std::max(worst, (oracle.x[k] - desired.x[k]).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10, "max stepwise gap = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 8. The adaptive controller beats the non-adaptive one on both presets.
Outcome adaptive_beats_non_adaptive() {
    std::string detail;
    bool pass = true;
    for (const std::string name : {"pendulum-4.1.2", "wheel-4.2.2"}) {
        const ScenarioConfig acfg = preset_config(name, Mode::adaptive);
        const ScenarioConfig ncfg = preset_config(name, Mode::non_adaptive);
        const RunMetrics a = compute_metrics(run_scenario(acfg), acfg);
        const RunMetrics n = compute_metrics(run_scenario(ncfg), ncfg);
        const bool ok =
            a.tracking_rms < n.tracking_rms && n.final_state_error > a.final_state_error;
        pass &= ok;
        detail += name + ": rms " + fmt(a.tracking_rms) + " vs " + fmt(n.tracking_rms) +
                  ", err " + fmt(a.final_state_error) + " vs " +
                  fmt(n.final_state_error) + (ok ? "" : " VIOLATED") + "; ";
    }
    return {pass, detail};
}

// ---------------------------------------------------------------------------
// 9. End-to-end determinism of the run command.
Outcome determinism() {
    const fs::path root =
        fs::temp_directory_path() / ("idapbc_accept_" + std::to_string(std::random_device{}()));
    const fs::path dir_a = root / "a";
    const fs::path dir_b = root / "b";
    std::ostringstream log;
    RunOptions options;
    options.config = "pendulum-4.1.2";
    options.out_dir = dir_a.string();
    const int code_a = run_command(options, log);
    options.out_dir = dir_b.string();
    const int code_b = run_command(options, log);
    bool pass = code_a == kExitOk && code_b == kExitOk;
    std::string detail;
    if (!pass) {
        detail = "run command failed";
    } else {
        for (const auto& item : fs::directory_iterator(dir_a)) {
            const fs::path other = dir_b / item.path().filename();
            if (!fs::exists(other) ||
                sha256_file(item.path().string()) != sha256_file(other.string())) {
                pass = false;
                detail = "mismatch in " + item.path().filename().string();
                break;
            }
        }
        if (pass) {
            detail = "all emitted files byte-identical across two executions";
        }
    }
    fs::remove_all(root);
    return {pass, detail};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "discrete-gradient consistency", 1.0, consistency},
        {2, "midpoint residual third-order decay", 1.0, midpoint_order},
        {3, "estimation-error recursion equivalence", 2.0, estimator_equivalence},
        {4, "estimator condition certification", 5.0, condition_certification},
        {5, "pendulum adaptive convergence", 2.0, pendulum_convergence},
        {6, "wheel adaptive convergence", 2.0, wheel_convergence},
        {7, "oracle run matches the target recursion", 1.0, oracle_matching},
        {8, "adaptive beats non-adaptive", std::nullopt, adaptive_beats_non_adaptive},
        {9, "end-to-end determinism", std::nullopt, determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& err) {
            outcome = {false, std::string("exception: ") + err.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        bool pass = outcome.pass;
        std::string timing = fmt(elapsed) + " s";
        if (criterion.time_limit_s && elapsed > *criterion.time_limit_s) {
            pass = false;
            timing += " EXCEEDS " + fmt(*criterion.time_limit_s) + " s limit";
        }
        std::printf("[%d] %s %s: %s (%s)\n", criterion.id, pass ? "PASS" : "FAIL",
                    criterion.name.c_str(), outcome.detail.c_str(), timing.c_str());
        failures += pass ? 0 : 1;
    }
    return failures;
}
