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

#ifndef IDAPBC_ORCHESTRATOR_HPP
#define IDAPBC_ORCHESTRATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "idapbc/sim.hpp"

namespace idapbc {

/// Exit categories of the command entry points.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitNumericalError = 2,
    kExitAcceptanceError = 3,
};

struct RunOptions {
    std::string config;         ///< path to a config file or a bundled preset name
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;  ///< overrides every sampler seed
    bool check = false;         ///< gate on the convergence thresholds
    bool no_plots = false;
};

/// Frozen per-system convergence thresholds used by `run --check`.
struct AcceptanceThresholds {
    double param_tol_rel;  ///< componentwise |theta_i - true_i| <= rel * |true_i|
    double state_tol;      ///< pendulum: |q_end - q*|; wheel: max |x_end|
};
AcceptanceThresholds acceptance_thresholds(SystemKind system);

/// run <config>: simulate every scenario/mode, emit CSVs, plots, condition
/// reports and the manifest. Returns an ExitCode.
int run_command(const RunOptions& options, std::ostream& log);

/// verify <config>: certification sweeps only; no simulation.
int verify_command(const RunOptions& options, std::ostream& log);

/// presets: list bundled configuration names.
int presets_command(std::ostream& out);

}  // namespace idapbc

#endif  // IDAPBC_ORCHESTRATOR_HPP
