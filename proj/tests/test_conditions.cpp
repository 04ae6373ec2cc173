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

#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "idapbc/conditions.hpp"
#include "idapbc/systems.hpp"

using namespace idapbc;

namespace {

ScenarioConfig pendulum_cfg() { return test::preset_config("pendulum-4.1.2"); }
ScenarioConfig wheel_cfg() { return test::preset_config("wheel-4.2.2"); }

// Gain shape with the state-dependent pendulum constant, optionally scaled.
GainShape formula_gain(const SystemBundle& b, double T, double multiplier) {
    const EstimatorGains gains = b.estimator_gains;
    return [b, T, gains, multiplier](const State& xbar, const Vec&) {
        const Mat A = regressor(b.structure, b.decomposition, xbar, T);
        const double c1 = multiplier * gain_formula_pendulum(xbar, T, 1.0, 9.81,
                                                             gains.alpha, gains.delta, A);
        return (Mat(1, 2) << c1, 0.0).finished();
    };
}

}  // namespace

TEST_CASE("psi basics") {
    const SystemBundle wheel = wheel_cfg().make_bundle();
    const State rest = (State(4) << 1.0, -0.5, 0.0, 0.0).finished();
    CHECK(psi(wheel.structure, wheel.decomposition, wheel.K_gain, wheel.estimator_gains,
              rest, (Vec(2) << 0.2, 0.3).finished(), 0.01)
              .norm() == 0.0);

    const SystemBundle pend = pendulum_cfg().make_bundle();
    const State xbar = (State(2) << 1.1, 0.6).finished();
    const Vec theta = Vec::Constant(1, 2.0);
    const Vec value = psi(pend.structure, pend.decomposition, pend.K_gain,
                          pend.estimator_gains, xbar, theta, 0.01);
    // psi = c1 (T m g sin qbar)^2 / eta * theta for the [c1 0] gain shape.
    const double a_q = 0.01 * 9.81 * std::sin(1.1);
    const double a_p = 0.01 * 0.6;
    const double eta = 2.0 * (std::max(a_q * a_q, a_p * a_p) + 1.0);
    CHECK(value(0) == doctest::Approx(100.0 * a_q * a_q / eta * 2.0).epsilon(1e-12));
    const Vec again = psi(pend.structure, pend.decomposition, pend.K_gain,
                          pend.estimator_gains, xbar, theta, 0.01);
    CHECK((value - again).norm() == 0.0);
}

TEST_CASE("domain sampler is deterministic and respects its boxes") {
    DomainSampler sampler;
    sampler.state_box = {{-1.0, 2.0}, {0.5, 0.75}};
    sampler.theta_box = {{0.1, 0.4}};
    sampler.count = 100;
    sampler.seed = 7;
    sampler.validate();
    for (std::int64_t i = 0; i < sampler.count; ++i) {
        const State x = sampler.draw_state(i);
        CHECK(x(0) >= -1.0);
        CHECK(x(0) < 2.0);
        CHECK(x(1) >= 0.5);
        CHECK(x(1) < 0.75);
        const auto [a, b] = sampler.draw_theta_pair(i);
        CHECK(a(0) >= 0.1);
        CHECK(b(0) < 0.4);
        CHECK(a(0) != b(0));
        CHECK((sampler.draw_state(i) - x).norm() == 0.0);
    }
    DomainSampler reseeded = sampler;
    reseeded.seed = 8;
    CHECK((reseeded.draw_state(0) - sampler.draw_state(0)).norm() != 0.0);

    DomainSampler bad = sampler;
    bad.state_box[0] = {2.0, -1.0};
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("pendulum monotonicity sweep passes and matches the closed form") {
    const ScenarioConfig cfg = pendulum_cfg();
    const SystemBundle b = cfg.make_bundle();
    DomainSampler sampler = cfg.sampler;
    sampler.count = 2000;
    const ConditionReport report =
        check_p_monotone(b.structure, b.decomposition, b.K_gain, b.estimator_gains,
                         sampler, cfg.sampling.T);
    CHECK(report.passed);
    CHECK(report.worst_value >= -1e-12);
    CHECK(report.samples_checked == 2000);
    CHECK(report.check == "p_monotone");
    // The monotone quantity reduces to c1 (T m g sin qbar)^2 / eta (da)^2 >= 0.
    for (std::int64_t i : {0, 17, 1999}) {
        const State x = sampler.draw_state(i);
        const auto [ta, tb] = sampler.draw_theta_pair(i);
        const Vec pa = psi(b.structure, b.decomposition, b.K_gain, b.estimator_gains, x,
                           ta, cfg.sampling.T);
        const Vec pb = psi(b.structure, b.decomposition, b.K_gain, b.estimator_gains, x,
                           tb, cfg.sampling.T);
        const double a_q = cfg.sampling.T * 9.81 * std::sin(x(0));
        const double a_p = cfg.sampling.T * x(1);
        const double eta = 2.0 * (std::max(a_q * a_q, a_p * a_p) + 1.0);
        const double expected =
            100.0 * a_q * a_q / eta * (ta(0) - tb(0)) * (ta(0) - tb(0));
        CHECK((ta - tb).dot(pa - pb) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("wheel monotonicity sweep passes on a positive parameter box") {
    const ScenarioConfig cfg = wheel_cfg();
    const SystemBundle b = cfg.make_bundle();
    DomainSampler sampler = cfg.sampler;
    sampler.count = 2000;
    const ConditionReport report =
        check_p_monotone(b.structure, b.decomposition, b.K_gain, b.estimator_gains,
                         sampler, cfg.sampling.T);
    CHECK(report.passed);
    CHECK(report.worst_value >= -1e-12);
}

TEST_CASE("lipschitz sweep with the formula gain passes; a 10x gain fails") {
    const ScenarioConfig cfg = pendulum_cfg();
    const SystemBundle b = cfg.make_bundle();
    DomainSampler sampler = cfg.sampler;
    sampler.count = 2000;

    const ConditionReport ok =
        check_lipschitz(b.structure, b.decomposition, formula_gain(b, cfg.sampling.T, 1.0),
                        b.estimator_gains, sampler, cfg.sampling.T);
    CHECK(ok.passed);
    CHECK(ok.worst_value < 1.0);

    const ConditionReport bad = check_lipschitz(b.structure, b.decomposition,
                                                formula_gain(b, cfg.sampling.T, 10.0),
                                                b.estimator_gains, sampler, cfg.sampling.T);
    CHECK(!bad.passed);
    CHECK(bad.worst_value >= 1.0);
    CHECK(bad.violation_count > 0);
    CHECK(bad.violations.size() <= 64);
    for (std::size_t i = 1; i < bad.violations.size(); ++i) {
        CHECK(bad.violations[i - 1].sample < bad.violations[i].sample);
    }
}

TEST_CASE("zero gain shape gives a zero Lipschitz estimate") {
    const ScenarioConfig cfg = pendulum_cfg();
    const SystemBundle b = cfg.make_bundle();
    DomainSampler sampler = cfg.sampler;
    sampler.count = 500;
    const GainShape none = [](const State&, const Vec&) { return Mat::Zero(1, 2); };
    const ConditionReport report = check_lipschitz(b.structure, b.decomposition, none,
                                                   b.estimator_gains, sampler,
                                                   cfg.sampling.T);
    CHECK(report.passed);
    CHECK(report.worst_value == 0.0);
}

TEST_CASE("parallel and serial sweeps produce identical reports") {
    for (const std::string name : {"pendulum-4.1.2", "wheel-4.2.2"}) {
        const ScenarioConfig cfg = test::preset_config(name);
        const SystemBundle b = cfg.make_bundle();
        DomainSampler sampler = cfg.sampler;
        sampler.count = 3000;
        for (const bool lipschitz : {false, true}) {
            auto run = [&](bool parallel) {
                return lipschitz ? check_lipschitz(b.structure, b.decomposition, b.K_gain,
                                                   b.estimator_gains, sampler,
                                                   cfg.sampling.T, parallel)
                                 : check_p_monotone(b.structure, b.decomposition, b.K_gain,
                                                    b.estimator_gains, sampler,
                                                    cfg.sampling.T, parallel);
            };
            const ConditionReport serial = run(false);
            const ConditionReport parallel = run(true);
            CHECK(serial.worst_value == parallel.worst_value);
            CHECK(serial.violation_count == parallel.violation_count);
            CHECK(serial.passed == parallel.passed);
            REQUIRE(serial.violations.size() == parallel.violations.size());
            for (std::size_t i = 0; i < serial.violations.size(); ++i) {
                CHECK(serial.violations[i].sample == parallel.violations[i].sample);
                CHECK(serial.violations[i].value == parallel.violations[i].value);
            }
        }
    }
}

TEST_CASE("reports echo the boxes they swept") {
    const ScenarioConfig cfg = wheel_cfg();
    const SystemBundle b = cfg.make_bundle();
    DomainSampler sampler = cfg.sampler;
    sampler.count = 100;
    const ConditionReport report = check_p_monotone(
        b.structure, b.decomposition, b.K_gain, b.estimator_gains, sampler, cfg.sampling.T);
    CHECK(report.sampler.state_box == sampler.state_box);
    CHECK(report.sampler.theta_box == sampler.theta_box);
    CHECK(report.sampler.seed == sampler.seed);
    CHECK(report.sampler.count == sampler.count);
}

TEST_CASE("lyapunov trace") {
    const Mat P = Mat::Identity(1, 1);
    SUBCASE("zero error gives a zero trace") {
        const std::vector<Vec> z(5, Vec::Zero(1));
        const LyapunovTrace trace = lyapunov_trace(z, P);
        for (double v : trace.V) CHECK(v == 0.0);
        for (double dv : trace.dV) CHECK(dv == 0.0);
    }
    SUBCASE("known sequence") {
        std::vector<Vec> z = {Vec::Constant(1, 2.0), Vec::Constant(1, -1.0),
                              Vec::Constant(1, 0.5)};
        const LyapunovTrace trace = lyapunov_trace(z, P);
        REQUIRE(trace.V.size() == 3);
        REQUIRE(trace.dV.size() == 2);
        CHECK(trace.V[0] == doctest::Approx(4.0));
        CHECK(trace.V[1] == doctest::Approx(1.0));
        CHECK(trace.V[2] == doctest::Approx(0.25));
        CHECK(trace.dV[0] == doctest::Approx(-3.0));
        CHECK(trace.dV[1] == doctest::Approx(-0.75));
        for (double v : trace.V) CHECK(v >= 0.0);
    }
}

TEST_CASE("closed-loop energy trace evaluates the desired energy pointwise") {
    const ScenarioConfig cfg = pendulum_cfg();
    const SystemBundle b = cfg.make_bundle();
    std::mt19937_64 rng(41);
    std::vector<State> states;
    for (int i = 0; i < 20; ++i) {
        states.push_back(test::random_state(rng, 2));
    }
    const auto trace = closed_loop_energy_trace(states, b.desired.H_d, b.theta_true);
    REQUIRE(trace.size() == states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(trace[i] == doctest::Approx(b.desired.H_d(states[i], b.theta_true)));
    }
    // The desired energy is minimal at the target for the true parameters.
    const State x_star = (State(2) << cfg.pendulum.q_star, 0.0).finished();
    const double floor = b.desired.H_d(x_star, b.theta_true);
    for (int i = 0; i < 200; ++i) {
        State nearby = x_star + 0.3 * test::random_state(rng, 2, 1.0);
        CHECK(b.desired.H_d(nearby, b.theta_true) >= floor - 1e-12);
    }
}
