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

#include "idapbc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace idapbc {

namespace {

constexpr double kMonotoneTolerance = -1e-12;
constexpr std::size_t kMaxStoredViolations = 64;

// splitmix64; one stream per (seed, sample) so draws are order-independent.
struct SampleRng {
    std::uint64_t state;
    SampleRng(std::uint64_t seed, std::int64_t sample)
        : state(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(sample + 1))) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

}  // namespace

void DomainSampler::validate() const {
    if (count < 1) {
        throw ContractViolation("DomainSampler: count must be >= 1");
    }
    for (const auto& box : state_box) {
        if (!(box[0] < box[1])) {
            throw ContractViolation("DomainSampler: state box needs lo < hi");
        }
    }
    for (const auto& box : theta_box) {
        if (!(box[0] < box[1])) {
            throw ContractViolation("DomainSampler: theta box needs lo < hi");
        }
    }
}

State DomainSampler::draw_state(std::int64_t sample) const {
    SampleRng rng(seed, sample);
    State x(static_cast<Eigen::Index>(state_box.size()));
    for (std::size_t i = 0; i < state_box.size(); ++i) {
        x(static_cast<Eigen::Index>(i)) = rng.uniform(state_box[i][0], state_box[i][1]);
    }
    return x;
}

std::pair<Vec, Vec> DomainSampler::draw_theta_pair(std::int64_t sample) const {
    SampleRng rng(seed ^ 0x5851f42d4c957f2dULL, sample);
    const auto s = static_cast<Eigen::Index>(theta_box.size());
    Vec a(s), b(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        a(i) = rng.uniform(theta_box[i][0], theta_box[i][1]);
    }
    do {
        for (Eigen::Index i = 0; i < s; ++i) {
            b(i) = rng.uniform(theta_box[i][0], theta_box[i][1]);
        }
    } while ((a.array() == b.array()).all());
    return {a, b};
}

Vec psi(const StructureMatrices& structure, const UncertainDecomposition& dec,
        const GainShape& K, const EstimatorGains& gains, const State& x, const Vec& theta,
        double T) {
    const Mat A = regressor(structure, dec, x, T);
    const Mat beta = beta_matrix(structure, dec, K, gains, x, theta, T);
    return beta * (A * dec.param_map(x, theta));
}

namespace {

// Per-sample payload of both sweep kinds. `value` is the monotone quantity or
// the Lipschitz ratio; `violated` flags it against the respective threshold.
struct SampleResult {
    double value = 0.0;
    bool violated = false;
};

template <typename PerSample>
ConditionReport sweep(const DomainSampler& sampler, bool parallel, bool take_min,
                      const PerSample& eval) {
    sampler.validate();
    const std::int64_t n = sampler.count;
    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> violated(static_cast<std::size_t>(n));

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const SampleResult r = eval(i);
            values[static_cast<std::size_t>(i)] = r.value;
            violated[static_cast<std::size_t>(i)] = r.violated ? 1 : 0;
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            const SampleResult r = eval(i);
            values[static_cast<std::size_t>(i)] = r.value;
            violated[static_cast<std::size_t>(i)] = r.violated ? 1 : 0;
        }
    }

    ConditionReport report;
    report.samples_checked = n;
    report.sampler = sampler;
    report.worst_value = take_min ? *std::min_element(values.begin(), values.end())
                                  : *std::max_element(values.begin(), values.end());
    for (std::int64_t i = 0; i < n; ++i) {
        if (!violated[static_cast<std::size_t>(i)]) {
            continue;
        }
        ++report.violation_count;
        if (report.violations.size() < kMaxStoredViolations) {
            ConditionViolation v;
            v.sample = i;
            v.x = sampler.draw_state(i);
            auto [a, b] = sampler.draw_theta_pair(i);
            v.theta_a = a;
            v.theta_b = b;
            v.value = values[static_cast<std::size_t>(i)];
            report.violations.push_back(std::move(v));
        }
    }
    report.passed = report.violation_count == 0;
    return report;
}

}  // namespace

ConditionReport check_p_monotone(const StructureMatrices& structure,
                                 const UncertainDecomposition& dec, const GainShape& K,
                                 const EstimatorGains& gains, const DomainSampler& sampler,
                                 double T, bool parallel) {
    auto eval = [&](std::int64_t i) {
        const State x = sampler.draw_state(i);
        const auto [a, b] = sampler.draw_theta_pair(i);
        // beta's gain shape sees the same theta that phi sees on each side.
        const Vec pa = psi(structure, dec, K, gains, x, a, T);
        const Vec pb = psi(structure, dec, K, gains, x, b, T);
        SampleResult r;
        r.value = (a - b).dot(gains.P * (pa - pb));
        r.violated = r.value < kMonotoneTolerance;
        return r;
    };
    ConditionReport report = sweep(sampler, parallel, /*take_min=*/true, eval);
    report.check = "p_monotone";
    return report;
}

ConditionReport check_lipschitz(const StructureMatrices& structure,
                                const UncertainDecomposition& dec, const GainShape& K,
                                const EstimatorGains& gains, const DomainSampler& sampler,
                                double T, bool parallel) {
    auto eval = [&](std::int64_t i) {
        const State x = sampler.draw_state(i);
        const auto [a, b] = sampler.draw_theta_pair(i);
        const Vec pa = psi(structure, dec, K, gains, x, a, T);
        const Vec pb = psi(structure, dec, K, gains, x, b, T);
        SampleResult r;
        r.value = (pa - pb).norm() / (a - b).norm();
        r.violated = !(r.value < 1.0);
        return r;
    };
    ConditionReport report = sweep(sampler, parallel, /*take_min=*/false, eval);
    report.check = "lipschitz";
    return report;
}

LyapunovTrace lyapunov_trace(const std::vector<Vec>& z, const Mat& P) {
    LyapunovTrace trace;
    trace.V.reserve(z.size());
    for (const Vec& zk : z) {
        trace.V.push_back(zk.dot(P * zk));
    }
    if (!trace.V.empty()) {
        trace.dV.reserve(trace.V.size() - 1);
        for (std::size_t k = 0; k + 1 < trace.V.size(); ++k) {
            trace.dV.push_back(trace.V[k + 1] - trace.V[k]);
        }
    }
    return trace;
}

std::vector<double> closed_loop_energy_trace(
    const std::vector<State>& x,
    const std::function<double(const State&, const Vec&)>& H_d, const Vec& theta_true) {
    std::vector<double> trace;
    trace.reserve(x.size());
    for (const State& xk : x) {
        trace.push_back(H_d(xk, theta_true));
    }
    return trace;
}

}  // namespace idapbc
