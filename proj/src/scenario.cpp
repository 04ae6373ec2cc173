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

#include "idapbc/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace idapbc {

using nlohmann::json;

namespace {

const char* kPendulumPreset = R"json({
  "scenarios": [
    {
      "name": "pendulum-4.1.2",
      "system": "pendulum",
      "modes": ["desired_reference", "non_adaptive", "adaptive", "oracle"],
      "T": 0.01,
      "steps": 2000,
      "x0": [0.7, 0.5],
      "theta_est0": [0.01],
      "params": {
        "m": 1.0, "L": 2.0, "gravity": 9.81, "L_nominal": 4.0,
        "k_p": 40.0, "q_star": 2.0, "K_v": 5.0,
        "c1": 100.0, "alpha": 2.0, "delta": 0.001
      },
      "estimator": { "theta_min": [0.01], "theta_max": [100.0] },
      "sampler": {
        "state_box": [[-3.141592653589793, 3.141592653589793], [-3.0, 3.0]],
        "theta_box": [[0.5, 5.0]],
        "count": 10000,
        "seed": 42
      }
    }
  ]
})json";

const char* kWheelPreset = R"json({
  "scenarios": [
    {
      "name": "wheel-4.2.2",
      "system": "wheel",
      "modes": ["desired_reference", "non_adaptive", "adaptive", "oracle"],
      "T": 0.01,
      "steps": 2000,
      "x0": [2.0, 0.0, 0.0, 0.0],
      "theta_est0": [0.0, 0.0],
      "params": {
        "m": 1.0, "L": 1.0, "gravity": 9.81,
        "I1": 0.15, "I2": 0.08, "I1_nominal": 0.1, "I2_nominal": 0.1,
        "a1": 2.0, "a2": -3.0, "a3": 5.0, "k1": 0.214, "K_v": 10.0,
        "c1": 6.0, "c2": 2.0, "alpha": 1.0, "delta": 1.0,
        "q1_star": 0.0, "q2_star": 0.0
      },
      "estimator": { "theta_min": [0.01, 0.01], "theta_max": [100.0, 100.0] },
      "sampler": {
        "state_box": [[-3.0, 3.0], [-3.0, 3.0], [-4.0, 4.0], [-4.0, 4.0]],
        "theta_box": [[0.05, 0.5], [0.05, 0.5]],
        "count": 10000,
        "seed": 42
      }
    }
  ]
})json";

const std::vector<std::string> kPresetNames = {"pendulum-4.1.2", "wheel-4.2.2"};

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

void require_keys_known(const json& object, const std::set<std::string>& allowed,
                        const std::string& origin, const std::string& where) {
    for (const auto& item : object.items()) {
        if (!allowed.count(item.key())) {
            fail(origin, "unknown key '" + item.key() + "' in " + where);
        }
    }
}

double get_number(const json& object, const std::string& key, double fallback,
                  std::vector<std::string>& defaults, const std::string& prefix,
                  const std::string& origin) {
    if (!object.contains(key)) {
        defaults.push_back(prefix + key);
        return fallback;
    }
    if (!object[key].is_number()) {
        fail(origin, "key '" + prefix + key + "' must be a number");
    }
    return object[key].get<double>();
}

Vec get_vector(const json& value, Eigen::Index expected, const std::string& name,
               const std::string& origin) {
    if (!value.is_array()) {
        fail(origin, "key '" + name + "' must be an array of numbers");
    }
    if (expected >= 0 && static_cast<Eigen::Index>(value.size()) != expected) {
        fail(origin, "key '" + name + "' must have " + std::to_string(expected) +
                         " entries");
    }
    Vec out(static_cast<Eigen::Index>(value.size()));
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const auto& entry = value[static_cast<std::size_t>(i)];
        if (!entry.is_number()) {
            fail(origin, "key '" + name + "' must contain only numbers");
        }
        out(i) = entry.get<double>();
    }
    return out;
}

std::vector<std::array<double, 2>> get_boxes(const json& value, std::size_t expected,
                                             const std::string& name,
                                             const std::string& origin) {
    if (!value.is_array() || value.size() != expected) {
        fail(origin, "key '" + name + "' must be an array of " + std::to_string(expected) +
                         " [lo, hi] pairs");
    }
    std::vector<std::array<double, 2>> boxes;
    for (const auto& pair : value) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            fail(origin, "key '" + name + "' entries must be [lo, hi] number pairs");
        }
        boxes.push_back({pair[0].get<double>(), pair[1].get<double>()});
        if (!(boxes.back()[0] < boxes.back()[1])) {
            fail(origin, "key '" + name + "': lo must be < hi");
        }
    }
    return boxes;
}

Mode mode_from_string(const std::string& text, const std::string& origin) {
    if (text == "adaptive") return Mode::adaptive;
    if (text == "non_adaptive") return Mode::non_adaptive;
    if (text == "oracle") return Mode::oracle;
    if (text == "desired_reference") return Mode::desired_reference;
    fail(origin, "unknown mode '" + text +
                     "' (expected adaptive, non_adaptive, oracle, desired_reference)");
}

json sampler_to_json(const DomainSampler& sampler) {
    json state_box = json::array();
    for (const auto& b : sampler.state_box) state_box.push_back({b[0], b[1]});
    json theta_box = json::array();
    for (const auto& b : sampler.theta_box) theta_box.push_back({b[0], b[1]});
    return {{"state_box", state_box},
            {"theta_box", theta_box},
            {"count", sampler.count},
            {"seed", sampler.seed}};
}

json vec_to_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

ResolvedScenario parse_entry(const json& entry, const std::string& origin,
                             std::vector<std::string>& defaults, json& echo_entry) {
    static const std::set<std::string> kEntryKeys = {
        "name", "system", "modes", "T", "steps", "x0", "theta_est0",
        "params", "estimator", "sampler"};
    require_keys_known(entry, kEntryKeys, origin, "scenario entry");
    if (!entry.contains("name") || !entry["name"].is_string()) {
        fail(origin, "each scenario entry requires a string 'name'");
    }
    ResolvedScenario scenario;
    scenario.name = entry["name"].get<std::string>();
    const std::string prefix = scenario.name + ".";

    if (!entry.contains("system") || !entry["system"].is_string()) {
        fail(origin, scenario.name + ": requires 'system' (pendulum or wheel)");
    }
    const std::string system = entry["system"].get<std::string>();
    ScenarioConfig& cfg = scenario.base;
    cfg.name = scenario.name;
    if (system == "pendulum") {
        cfg.system = SystemKind::pendulum;
    } else if (system == "wheel") {
        cfg.system = SystemKind::wheel;
    } else {
        fail(origin, scenario.name + ": unknown system '" + system + "'");
    }
    const int n = cfg.system == SystemKind::pendulum ? 2 : 4;
    const int s = cfg.system == SystemKind::pendulum ? 1 : 2;

    if (entry.contains("modes")) {
        if (!entry["modes"].is_array() || entry["modes"].empty()) {
            fail(origin, scenario.name + ": 'modes' must be a non-empty array");
        }
        for (const auto& m : entry["modes"]) {
            if (!m.is_string()) fail(origin, scenario.name + ": modes must be strings");
            scenario.modes.push_back(mode_from_string(m.get<std::string>(), origin));
        }
    } else {
        scenario.modes = {Mode::desired_reference, Mode::non_adaptive, Mode::adaptive,
                          Mode::oracle};
        defaults.push_back(prefix + "modes");
    }

    cfg.sampling.T = get_number(entry, "T", 0.01, defaults, prefix, origin);
    if (!(cfg.sampling.T > 0)) fail(origin, scenario.name + ": T must be positive");
    cfg.sampling.steps = static_cast<int>(
        get_number(entry, "steps", 2000, defaults, prefix, origin));
    if (cfg.sampling.steps < 1) fail(origin, scenario.name + ": steps must be >= 1");

    if (entry.contains("x0")) {
        cfg.x0 = get_vector(entry["x0"], n, prefix + "x0", origin);
    } else {
        cfg.x0 = cfg.system == SystemKind::pendulum
                     ? (State(2) << 0.7, 0.5).finished()
                     : (State(4) << 2.0, 0.0, 0.0, 0.0).finished();
        defaults.push_back(prefix + "x0");
    }
    if (entry.contains("theta_est0")) {
        cfg.theta_est0 = get_vector(entry["theta_est0"], s, prefix + "theta_est0", origin);
    } else {
        cfg.theta_est0 = cfg.system == SystemKind::pendulum ? Vec::Constant(1, 0.01)
                                                            : Vec::Zero(2);
        defaults.push_back(prefix + "theta_est0");
    }

    const json params = entry.contains("params") ? entry["params"] : json::object();
    if (!params.is_object()) fail(origin, scenario.name + ": 'params' must be an object");
    const std::string pprefix = prefix + "params.";
    if (cfg.system == SystemKind::pendulum) {
        static const std::set<std::string> kKeys = {"m",  "L",   "gravity", "L_nominal",
                                                    "k_p", "q_star", "K_v", "c1",
                                                    "alpha", "delta"};
        require_keys_known(params, kKeys, origin, scenario.name + ".params");
        PendulumParams p;
        p.m = get_number(params, "m", p.m, defaults, pprefix, origin);
        p.L = get_number(params, "L", p.L, defaults, pprefix, origin);
        p.gravity = get_number(params, "gravity", p.gravity, defaults, pprefix, origin);
        p.k_p = get_number(params, "k_p", p.k_p, defaults, pprefix, origin);
        p.q_star = get_number(params, "q_star", p.q_star, defaults, pprefix, origin);
        p.K_v = get_number(params, "K_v", p.K_v, defaults, pprefix, origin);
        p.c1 = get_number(params, "c1", p.c1, defaults, pprefix, origin);
        p.alpha = get_number(params, "alpha", p.alpha, defaults, pprefix, origin);
        p.delta = get_number(params, "delta", p.delta, defaults, pprefix, origin);
        const double nominal =
            get_number(params, "L_nominal", 4.0, defaults, pprefix, origin);
        cfg.pendulum = p;
        cfg.theta_nominal = Vec::Constant(1, nominal);
    } else {
        static const std::set<std::string> kKeys = {
            "m",  "L",  "gravity", "I1", "I2",    "I1_nominal", "I2_nominal",
            "a1", "a2", "a3",      "k1", "K_v",   "c1",         "c2",
            "alpha", "delta", "q1_star", "q2_star"};
        require_keys_known(params, kKeys, origin, scenario.name + ".params");
        WheelParams w;
        w.m = get_number(params, "m", w.m, defaults, pprefix, origin);
        w.L = get_number(params, "L", w.L, defaults, pprefix, origin);
        w.gravity = get_number(params, "gravity", w.gravity, defaults, pprefix, origin);
        w.I1 = get_number(params, "I1", w.I1, defaults, pprefix, origin);
        w.I2 = get_number(params, "I2", w.I2, defaults, pprefix, origin);
        w.a1 = get_number(params, "a1", w.a1, defaults, pprefix, origin);
        w.a2 = get_number(params, "a2", w.a2, defaults, pprefix, origin);
        w.a3 = get_number(params, "a3", w.a3, defaults, pprefix, origin);
        w.k1 = get_number(params, "k1", w.k1, defaults, pprefix, origin);
        w.K_v = get_number(params, "K_v", w.K_v, defaults, pprefix, origin);
        w.c1 = get_number(params, "c1", w.c1, defaults, pprefix, origin);
        w.c2 = get_number(params, "c2", w.c2, defaults, pprefix, origin);
        w.alpha = get_number(params, "alpha", w.alpha, defaults, pprefix, origin);
        w.delta = get_number(params, "delta", w.delta, defaults, pprefix, origin);
        const double i1n = get_number(params, "I1_nominal", 0.1, defaults, pprefix, origin);
        const double i2n = get_number(params, "I2_nominal", 0.1, defaults, pprefix, origin);
        const double q1s = get_number(params, "q1_star", 0.0, defaults, pprefix, origin);
        const double q2s = get_number(params, "q2_star", 0.0, defaults, pprefix, origin);
        if (q1s != 0.0 || q2s != 0.0) {
            fail(origin, scenario.name +
                             ": the wheel target is the upward origin; q1_star and q2_star "
                             "must be 0");
        }
        cfg.wheel = w;
        cfg.theta_nominal = (Vec(2) << i1n, i2n).finished();
    }

    const json est = entry.contains("estimator") ? entry["estimator"] : json::object();
    if (!est.is_object()) fail(origin, scenario.name + ": 'estimator' must be an object");
    require_keys_known(est, {"theta_min", "theta_max"}, origin,
                       scenario.name + ".estimator");
    const std::string eprefix = prefix + "estimator.";
    if (est.contains("theta_min")) {
        cfg.theta_min = get_vector(est["theta_min"], s, eprefix + "theta_min", origin);
    } else {
        cfg.theta_min = Vec::Constant(s, 0.01);
        defaults.push_back(eprefix + "theta_min");
    }
    if (est.contains("theta_max")) {
        cfg.theta_max = get_vector(est["theta_max"], s, eprefix + "theta_max", origin);
    } else {
        cfg.theta_max = Vec::Constant(s, 100.0);
        defaults.push_back(eprefix + "theta_max");
    }
    for (int i = 0; i < s; ++i) {
        if (!(cfg.theta_min(i) < cfg.theta_max(i))) {
            fail(origin, scenario.name + ": theta_min must be < theta_max componentwise");
        }
    }

    const json sampler = entry.contains("sampler") ? entry["sampler"] : json::object();
    if (!sampler.is_object()) fail(origin, scenario.name + ": 'sampler' must be an object");
    require_keys_known(sampler, {"state_box", "theta_box", "count", "seed"}, origin,
                       scenario.name + ".sampler");
    const std::string sprefix = prefix + "sampler.";
    if (sampler.contains("state_box")) {
        cfg.sampler.state_box = get_boxes(sampler["state_box"], static_cast<std::size_t>(n),
                                          sprefix + "state_box", origin);
    } else {
        cfg.sampler.state_box.assign(static_cast<std::size_t>(n), {-3.0, 3.0});
        defaults.push_back(sprefix + "state_box");
    }
    if (sampler.contains("theta_box")) {
        cfg.sampler.theta_box = get_boxes(sampler["theta_box"], static_cast<std::size_t>(s),
                                          sprefix + "theta_box", origin);
    } else {
        cfg.sampler.theta_box.assign(static_cast<std::size_t>(s),
                                     cfg.system == SystemKind::pendulum
                                         ? std::array<double, 2>{0.5, 5.0}
                                         : std::array<double, 2>{0.05, 0.5});
        defaults.push_back(sprefix + "theta_box");
    }
    cfg.sampler.count = static_cast<std::int64_t>(
        get_number(sampler, "count", 10000, defaults, sprefix, origin));
    cfg.sampler.seed = static_cast<std::uint64_t>(
        get_number(sampler, "seed", 42, defaults, sprefix, origin));

    // Build once to run the constructors' constraint checks and collect the
    // soft warnings (e.g. the k_p > m g L margin).
    try {
        scenario.warnings = cfg.make_bundle().warnings;
    } catch (const DomainError& err) {
        fail(origin, scenario.name + ": " + err.what());
    }

    // Fully resolved echo of this entry.
    echo_entry["name"] = scenario.name;
    echo_entry["system"] = system;
    json modes = json::array();
    for (Mode m : scenario.modes) modes.push_back(to_string(m));
    echo_entry["modes"] = modes;
    echo_entry["T"] = cfg.sampling.T;
    echo_entry["steps"] = cfg.sampling.steps;
    echo_entry["x0"] = vec_to_json(cfg.x0);
    echo_entry["theta_est0"] = vec_to_json(cfg.theta_est0);
    if (cfg.system == SystemKind::pendulum) {
        const PendulumParams& p = cfg.pendulum;
        echo_entry["params"] = {
            {"m", p.m},          {"L", p.L},        {"gravity", p.gravity},
            {"L_nominal", cfg.theta_nominal(0)},    {"k_p", p.k_p},
            {"q_star", p.q_star}, {"K_v", p.K_v},   {"c1", p.c1},
            {"alpha", p.alpha},  {"delta", p.delta}};
    } else {
        const WheelParams& w = cfg.wheel;
        echo_entry["params"] = {
            {"m", w.m},   {"L", w.L},   {"gravity", w.gravity},
            {"I1", w.I1}, {"I2", w.I2}, {"I1_nominal", cfg.theta_nominal(0)},
            {"I2_nominal", cfg.theta_nominal(1)},   {"a1", w.a1},
            {"a2", w.a2}, {"a3", w.a3}, {"k1", w.k1},
            {"K_v", w.K_v}, {"c1", w.c1}, {"c2", w.c2},
            {"alpha", w.alpha}, {"delta", w.delta},
            {"q1_star", 0.0}, {"q2_star", 0.0}};
    }
    echo_entry["estimator"] = {{"theta_min", vec_to_json(cfg.theta_min)},
                               {"theta_max", vec_to_json(cfg.theta_max)}};
    echo_entry["sampler"] = sampler_to_json(cfg.sampler);
    return scenario;
}

}  // namespace

std::vector<ScenarioConfig> ResolvedScenario::expand() const {
    std::vector<ScenarioConfig> runs;
    runs.reserve(modes.size());
    for (Mode mode : modes) {
        ScenarioConfig cfg = base;
        cfg.mode = mode;
        runs.push_back(std::move(cfg));
    }
    return runs;
}

ResolvedConfig parse_config_text(const std::string& text, const std::string& origin) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigError(origin +
                          ": empty configuration; required keys: scenarios (array of "
                          "entries with at least 'name' and 'system')");
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(origin + ": not valid JSON: " + err.what());
    }
    if (!doc.is_object()) {
        fail(origin, "top level must be an object with a 'scenarios' array");
    }
    require_keys_known(doc, {"scenarios", "defaults_applied"}, origin, "top level");
    if (!doc.contains("scenarios") || !doc["scenarios"].is_array() ||
        doc["scenarios"].empty()) {
        fail(origin, "required key 'scenarios' must be a non-empty array");
    }

    ResolvedConfig resolved;
    json echo_entries = json::array();
    json defaults_by_entry = json::object();
    for (const auto& entry : doc["scenarios"]) {
        if (!entry.is_object()) {
            fail(origin, "scenario entries must be objects");
        }
        std::vector<std::string> defaults;
        json echo_entry = json::object();
        ResolvedScenario scenario = parse_entry(entry, origin, defaults, echo_entry);
        for (const auto& existing : resolved.entries) {
            if (existing.name == scenario.name) {
                fail(origin, "duplicate scenario name '" + scenario.name + "'");
            }
        }
        defaults_by_entry[scenario.name] = defaults;
        echo_entries.push_back(std::move(echo_entry));
        resolved.entries.push_back(std::move(scenario));
    }
    resolved.echo = {{"scenarios", echo_entries}, {"defaults_applied", defaults_by_entry}};
    return resolved;
}

ResolvedConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path + ": cannot open configuration file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

const std::vector<std::string>& preset_names() { return kPresetNames; }

bool is_preset(const std::string& name) {
    for (const auto& preset : kPresetNames) {
        if (preset == name) return true;
    }
    return false;
}

std::string preset_text(const std::string& name) {
    if (name == "pendulum-4.1.2") return kPendulumPreset;
    if (name == "wheel-4.2.2") return kWheelPreset;
    throw ConfigError("unknown preset '" + name + "'");
}

void apply_seed_override(ResolvedConfig& config, std::uint64_t seed) {
    for (auto& entry : config.entries) {
        entry.base.sampler.seed = seed;
    }
    for (auto& entry : config.echo["scenarios"]) {
        entry["sampler"]["seed"] = seed;
    }
}

}  // namespace idapbc
