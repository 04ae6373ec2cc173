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

#include "idapbc/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace idapbc {

std::string format_double(double value) {
    std::array<char, 32> buffer{};
    const auto result =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

namespace {

void append_indexed(std::vector<std::string>& columns, const std::string& stem, int count) {
    if (count == 1) {
        columns.push_back(stem);
        return;
    }
    for (int i = 1; i <= count; ++i) {
        columns.push_back(stem + "_" + std::to_string(i));
    }
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    return out;
}

}  // namespace

std::vector<std::string> csv_columns(SystemKind system) {
    const int dof = system == SystemKind::pendulum ? 1 : 2;
    const int s = system == SystemKind::pendulum ? 1 : 2;
    std::vector<std::string> columns = {"k", "t"};
    append_indexed(columns, "q", dof);
    append_indexed(columns, "p", dof);
    columns.push_back("u");
    for (int i = 1; i <= s; ++i) {
        columns.push_back("theta_est_" + std::to_string(i));
    }
    columns.push_back("V_z");
    columns.push_back("H_d");
    append_indexed(columns, "ref_q", dof);
    append_indexed(columns, "ref_p", dof);
    return columns;
}

void emit_csv(const Trajectory& traj, const std::string& path) {
    auto out = open_or_throw(path);
    const auto columns = csv_columns(traj.system);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    const int dof = traj.system == SystemKind::pendulum ? 1 : 2;
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        out << k << "," << format_double(traj.t[k]);
        for (int i = 0; i < 2 * dof; ++i) {
            out << "," << format_double(traj.x[k](i));
        }
        out << "," << format_double(traj.u[k](0));
        for (Eigen::Index i = 0; i < traj.theta_est[k].size(); ++i) {
            out << "," << format_double(traj.theta_est[k](i));
        }
        out << "," << format_double(traj.V_z[k]);
        out << "," << format_double(traj.H_d[k]);
        for (int i = 0; i < 2 * dof; ++i) {
            out << "," << format_double(traj.x_ref[k](i));
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

void emit_comparison_csv(const ComparisonTable& table, SystemKind system,
                         const std::string& path) {
    auto out = open_or_throw(path);
    const int dof = system == SystemKind::pendulum ? 1 : 2;
    out << "k,t";
    for (const auto& label : table.labels) {
        for (int i = 1; i <= dof; ++i) {
            out << "," << label << (dof == 1 ? "_q" : "_q_" + std::to_string(i));
        }
        for (int i = 1; i <= dof; ++i) {
            out << "," << label << (dof == 1 ? "_p" : "_p_" + std::to_string(i));
        }
        out << "," << label << "_u";
    }
    out << "\n";
    for (std::size_t k = 0; k < table.t.size(); ++k) {
        out << k << "," << format_double(table.t[k]);
        for (std::size_t run = 0; run < table.labels.size(); ++run) {
            for (int i = 0; i < 2 * dof; ++i) {
                out << "," << format_double(table.x[run][k](i));
            }
            out << "," << format_double(table.u[run][k](0));
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open for hashing: " + path);
    }
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 65536> chunk{};
    while (in) {
        in.read(chunk.data(), chunk.size());
        EVP_DigestUpdate(ctx, chunk.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx, digest.data(), &length);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::setw(2) << static_cast<int>(digest[i]);
    }
    return hex.str();
}

nlohmann::json to_json(const ConditionReport& report) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
        nlohmann::json x = nlohmann::json::array();
        for (Eigen::Index i = 0; i < v.x.size(); ++i) x.push_back(v.x(i));
        nlohmann::json a = nlohmann::json::array();
        for (Eigen::Index i = 0; i < v.theta_a.size(); ++i) a.push_back(v.theta_a(i));
        nlohmann::json b = nlohmann::json::array();
        for (Eigen::Index i = 0; i < v.theta_b.size(); ++i) b.push_back(v.theta_b(i));
        violations.push_back({{"sample", v.sample},
                              {"x", x},
                              {"theta_a", a},
                              {"theta_b", b},
                              {"value", v.value}});
    }
    nlohmann::json state_box = nlohmann::json::array();
    for (const auto& box : report.sampler.state_box) state_box.push_back({box[0], box[1]});
    nlohmann::json theta_box = nlohmann::json::array();
    for (const auto& box : report.sampler.theta_box) theta_box.push_back({box[0], box[1]});
    return {{"check", report.check},
            {"samples_checked", report.samples_checked},
            {"worst_value", report.worst_value},
            {"violation_count", report.violation_count},
            {"violations", violations},
            {"passed", report.passed},
            {"state_box", state_box},
            {"theta_box", theta_box},
            {"count", report.sampler.count},
            {"seed", report.sampler.seed}};
}

nlohmann::json to_json(const RunMetrics& metrics) {
    return {{"final_param_error", metrics.final_param_error},
            {"final_state_error", metrics.final_state_error},
            {"tracking_rms", metrics.tracking_rms},
            {"V_z_monotone_fraction", metrics.V_z_monotone_fraction}};
}

}  // namespace idapbc
