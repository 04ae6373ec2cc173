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

// Compares the serial reference sweep kernels against the OpenMP ones and
// checks that both produce identical reports.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idapbc/conditions.hpp"
#include "idapbc/scenario.hpp"

namespace {

using idapbc::ConditionReport;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool same_report(const ConditionReport& a, const ConditionReport& b) {
    return a.worst_value == b.worst_value && a.violation_count == b.violation_count &&
           a.passed == b.passed && a.samples_checked == b.samples_checked;
}

void bench_preset(const std::string& preset, std::int64_t samples) {
    auto resolved = idapbc::parse_config_text(idapbc::preset_text(preset), preset);
    const idapbc::ScenarioConfig& cfg = resolved.entries.front().base;
    const idapbc::SystemBundle bundle = cfg.make_bundle();
    idapbc::DomainSampler sampler = cfg.sampler;
    sampler.count = samples;

    for (const bool lipschitz : {false, true}) {
        auto run = [&](bool parallel) {
            return lipschitz
                       ? idapbc::check_lipschitz(bundle.structure, bundle.decomposition,
                                                 bundle.K_gain, bundle.estimator_gains,
                                                 sampler, cfg.sampling.T, parallel)
                       : idapbc::check_p_monotone(bundle.structure, bundle.decomposition,
                                                  bundle.K_gain, bundle.estimator_gains,
                                                  sampler, cfg.sampling.T, parallel);
        };
        auto t0 = Clock::now();
        const ConditionReport serial = run(false);
        const double serial_ms = ms_since(t0);
        t0 = Clock::now();
        const ConditionReport parallel = run(true);
        const double parallel_ms = ms_since(t0);
        std::printf("%-16s %-11s %8lld samples  serial %8.2f ms  parallel %8.2f ms  "
                    "speedup %5.2fx  identical %s\n",
                    preset.c_str(), lipschitz ? "lipschitz" : "p_monotone",
                    static_cast<long long>(samples), serial_ms, parallel_ms,
                    serial_ms / parallel_ms, same_report(serial, parallel) ? "yes" : "NO");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t samples = 200000;
    if (argc > 1) {
        samples = std::atoll(argv[1]);
    }
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif
    bench_preset("pendulum-4.1.2", samples);
    bench_preset("wheel-4.2.2", samples);
    return 0;
}
