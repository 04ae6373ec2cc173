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

#include <iostream>

#include <CLI11.hpp>

#include "idapbc/orchestrator.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time adaptive IDA-PBC simulator for port-Hamiltonian systems"};
    app.set_version_flag("--version", IDAPBC_VERSION);
    app.require_subcommand(1);

    idapbc::RunOptions options;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "Simulate the scenarios of a config or preset");
    run->add_option("config", options.config, "config file path or preset name")
        ->required();
    run->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    auto* run_seed = run->add_option("--seed", seed, "override every sampler seed");
    run->add_flag("--check", options.check, "gate on the convergence thresholds");
    run->add_flag("--no-plots", options.no_plots, "skip SVG figure generation");

    auto* verify =
        app.add_subcommand("verify", "Run the certification sweeps without simulating");
    verify->add_option("config", options.config, "config file path or preset name")
        ->required();
    verify->add_option("--out", options.out_dir, "output directory")
        ->capture_default_str();
    auto* verify_seed = verify->add_option("--seed", seed, "override every sampler seed");

    auto* presets = app.add_subcommand("presets", "List bundled configurations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (run_seed->count()) options.seed = seed;
            return idapbc::run_command(options, std::cerr);
        }
        if (verify->parsed()) {
            if (verify_seed->count()) options.seed = seed;
            return idapbc::verify_command(options, std::cerr);
        }
        if (presets->parsed()) {
            return idapbc::presets_command(std::cout);
        }
    } catch (const idapbc::NumericalBlowup& err) {
        std::cerr << "numerical error: " << err.what() << "\n";
        return idapbc::kExitNumericalError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return idapbc::kExitConfigError;
    }
    return idapbc::kExitOk;
}
