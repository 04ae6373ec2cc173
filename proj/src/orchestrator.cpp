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

#include "idapbc/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include "idapbc/output.hpp"
#include "idapbc/plot.hpp"
#include "idapbc/scenario.hpp"

namespace idapbc {

namespace fs = std::filesystem;
using nlohmann::json;

AcceptanceThresholds acceptance_thresholds(SystemKind system) {
    if (system == SystemKind::pendulum) {
        return {0.02, 0.01};
    }
    return {0.05, 0.02};
}

namespace {

ResolvedConfig resolve(const RunOptions& options) {
    ResolvedConfig config = is_preset(options.config)
                                ? parse_config_text(preset_text(options.config),
                                                    "preset " + options.config)
                                : parse_config(options.config);
    if (options.seed) {
        apply_seed_override(config, *options.seed);
    }
    return config;
}

struct EntryOutcome {
    json entry_report = json::object();
    std::vector<std::string> files;
    bool blowup = false;
    bool check_failed = false;
};

std::pair<ConditionReport, ConditionReport> run_sweeps(const ScenarioConfig& cfg) {
    const SystemBundle bundle = cfg.make_bundle();
    const ConditionReport monotone =
        check_p_monotone(bundle.structure, bundle.decomposition, bundle.K_gain,
                         bundle.estimator_gains, cfg.sampler, cfg.sampling.T);
    const ConditionReport lipschitz =
        check_lipschitz(bundle.structure, bundle.decomposition, bundle.K_gain,
                        bundle.estimator_gains, cfg.sampler, cfg.sampling.T);
    return {monotone, lipschitz};
}

json check_entry(const ResolvedScenario& entry, const std::vector<Trajectory>& trajs,
                 const std::vector<RunMetrics>& metrics, bool& failed) {
    json checks = json::array();
    const SystemBundle bundle = entry.base.make_bundle();
    const AcceptanceThresholds tol = acceptance_thresholds(entry.base.system);

    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"name", name}, {"passed", ok}, {"detail", detail}});
        failed |= !ok;
    };

    int adaptive = -1, non_adaptive = -1;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        if (trajs[i].mode == Mode::adaptive) adaptive = static_cast<int>(i);
        if (trajs[i].mode == Mode::non_adaptive) non_adaptive = static_cast<int>(i);
    }

    if (adaptive >= 0) {
        const Trajectory& traj = trajs[static_cast<std::size_t>(adaptive)];
        bool param_ok = true;
        std::string detail;
        for (Eigen::Index i = 0; i < bundle.theta_true.size(); ++i) {
            const double err = std::abs(traj.theta_est.back()(i) - bundle.theta_true(i));
            const double bound = tol.param_tol_rel * std::abs(bundle.theta_true(i));
            param_ok &= err <= bound;
            detail += (i ? "; " : "") + std::string("|dtheta_") + std::to_string(i + 1) +
                      "| = " + format_double(err) + " vs " + format_double(bound);
        }
        add("parameter_convergence", param_ok, detail);

        double state_err;
        if (entry.base.system == SystemKind::pendulum) {
            state_err = std::abs(traj.x.back()(0) - entry.base.pendulum.q_star);
        } else {
            state_err = traj.x.back().cwiseAbs().maxCoeff();
        }
        add("state_convergence", state_err <= tol.state_tol,
            format_double(state_err) + " vs " + format_double(tol.state_tol));

        if (entry.base.system == SystemKind::pendulum) {
            const double slack = 1e-9 * traj.V_z.front();
            bool vz_ok = true;
            for (std::size_t k = 0; k + 1 < traj.V_z.size(); ++k) {
                if (traj.checks_pass[k] && traj.V_z[k + 1] - traj.V_z[k] > slack) {
                    vz_ok = false;
                    break;
                }
            }
            add("V_z_nonincreasing_where_certified", vz_ok,
                "slack " + format_double(slack));
        }
    }
    if (adaptive >= 0 && non_adaptive >= 0) {
        const RunMetrics& ma = metrics[static_cast<std::size_t>(adaptive)];
        const RunMetrics& mn = metrics[static_cast<std::size_t>(non_adaptive)];
        add("adaptive_beats_non_adaptive",
            ma.tracking_rms < mn.tracking_rms &&
                mn.final_state_error > ma.final_state_error,
            "tracking_rms " + format_double(ma.tracking_rms) + " vs " +
                format_double(mn.tracking_rms) + ", final_state_error " +
                format_double(ma.final_state_error) + " vs " +
                format_double(mn.final_state_error));
    }
    return checks;
}

EntryOutcome process_entry(const ResolvedScenario& entry, const RunOptions& options,
                           std::ostream& log) {
    EntryOutcome outcome;
    json& report = outcome.entry_report;
    report["name"] = entry.name;
    report["warnings"] = entry.warnings;
    for (const auto& warning : entry.warnings) {
        log << "warning: " << warning << "\n";
    }

    const auto [monotone, lipschitz] = run_sweeps(entry.base);
    report["condition_reports"] = {to_json(monotone), to_json(lipschitz)};
    report["stall_manifold"] = entry.base.make_bundle().stall_manifold;

    const std::vector<ScenarioConfig> cfgs = entry.expand();
    std::vector<Trajectory> trajs(cfgs.size());
    std::string deferred_error;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cfgs.size()); ++i) {
        try {
            trajs[static_cast<std::size_t>(i)] =
                run_scenario(cfgs[static_cast<std::size_t>(i)]);
        } catch (const std::exception& err) {
#pragma omp critical
            deferred_error = err.what();
        }
    }
    if (!deferred_error.empty()) {
        throw ContractViolation(deferred_error);
    }

    std::vector<RunMetrics> metrics;
    json runs = json::array();
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        const Trajectory& traj = trajs[i];
        metrics.push_back(compute_metrics(traj, cfgs[i]));
        const std::string csv_name = entry.name + "_" + to_string(traj.mode) + ".csv";
        const std::string csv_path = options.out_dir + "/" + csv_name;
        emit_csv(traj, csv_path);
        outcome.files.push_back(csv_path);
        json run = {{"mode", to_string(traj.mode)},
                    {"csv", csv_name},
                    {"metrics", to_json(metrics.back())}};
        if (traj.blowup_step) {
            run["blowup_step"] = *traj.blowup_step;
            outcome.blowup = true;
            log << entry.name << "/" << to_string(traj.mode)
                << ": numerical blowup at step " << *traj.blowup_step << "\n";
        }
        runs.push_back(std::move(run));
    }
    report["runs"] = runs;

    if (trajs.size() > 1 && !outcome.blowup) {
        const ComparisonTable table = compare_runs(trajs, cfgs);
        const std::string cmp_path = options.out_dir + "/" + entry.name + "_comparison.csv";
        emit_comparison_csv(table, entry.base.system, cmp_path);
        outcome.files.push_back(cmp_path);
    }
    if (!options.no_plots && !outcome.blowup) {
        const SystemBundle bundle = entry.base.make_bundle();
        const auto plot_files =
            emit_plots(trajs, bundle.theta_true, options.out_dir, entry.name);
        outcome.files.insert(outcome.files.end(), plot_files.begin(), plot_files.end());
    }
    if (options.check && !outcome.blowup) {
        report["checks"] = check_entry(entry, trajs, metrics, outcome.check_failed);
    }
    return outcome;
}

json file_inventory(const std::vector<std::string>& files) {
    json inventory = json::array();
    for (const auto& path : files) {
        inventory.push_back({{"path", fs::path(path).filename().string()},
                             {"sha256", sha256_file(path)},
                             {"bytes", fs::file_size(path)}});
    }
    return inventory;
}

void write_manifest(const json& manifest, const std::string& out_dir) {
    std::ofstream out(out_dir + "/manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& log) {
    ResolvedConfig config;
    try {
        config = resolve(options);
    } catch (const ConfigError& err) {
        log << "config error: " << err.what() << "\n";
        return kExitConfigError;
    }
    fs::create_directories(options.out_dir);

    json manifest = {{"tool", "idapbc"},
                     {"version", IDAPBC_VERSION},
                     {"command", "run"},
                     {"config", config.echo}};
    if (options.seed) {
        manifest["seed_override"] = *options.seed;
    }

    bool blowup = false, check_failed = false;
    json entries = json::array();
    std::vector<std::string> files;
    try {
        for (const auto& entry : config.entries) {
            EntryOutcome outcome = process_entry(entry, options, log);
            entries.push_back(std::move(outcome.entry_report));
            files.insert(files.end(), outcome.files.begin(), outcome.files.end());
            blowup |= outcome.blowup;
            check_failed |= outcome.check_failed;
        }
    } catch (const ContractViolation& err) {
        log << "config error: " << err.what() << "\n";
        return kExitConfigError;
    }
    manifest["entries"] = entries;
    manifest["files"] = file_inventory(files);
    write_manifest(manifest, options.out_dir);

    if (blowup) {
        return kExitNumericalError;
    }
    if (options.check && check_failed) {
        log << "acceptance thresholds violated (see manifest checks)\n";
        return kExitAcceptanceError;
    }
    return kExitOk;
}

int verify_command(const RunOptions& options, std::ostream& log) {
    ResolvedConfig config;
    try {
        config = resolve(options);
    } catch (const ConfigError& err) {
        log << "config error: " << err.what() << "\n";
        return kExitConfigError;
    }
    fs::create_directories(options.out_dir);
    json manifest = {{"tool", "idapbc"},
                     {"version", IDAPBC_VERSION},
                     {"command", "verify"},
                     {"config", config.echo}};
    json entries = json::array();
    for (const auto& entry : config.entries) {
        const auto [monotone, lipschitz] = run_sweeps(entry.base);
        entries.push_back({{"name", entry.name},
                           {"warnings", entry.warnings},
                           {"condition_reports", {to_json(monotone), to_json(lipschitz)}}});
        log << entry.name << ": p_monotone " << (monotone.passed ? "passed" : "FAILED")
            << " (worst " << format_double(monotone.worst_value) << "), lipschitz "
            << (lipschitz.passed ? "passed" : "FAILED") << " (L_hat "
            << format_double(lipschitz.worst_value) << ")\n";
    }
    manifest["entries"] = entries;
    manifest["files"] = json::array();
    write_manifest(manifest, options.out_dir);
    return kExitOk;
}

int presets_command(std::ostream& out) {
    for (const auto& name : preset_names()) {
        out << name << "\n";
    }
    return kExitOk;
}

}  // namespace idapbc
