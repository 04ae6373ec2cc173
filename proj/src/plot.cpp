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

#include "idapbc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace idapbc {

namespace {

constexpr double kPanelWidth = 860.0;
constexpr double kPanelHeight = 240.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 36.0;

std::string num(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double extra = 0.05 * (hi - lo);
        lo -= extra;
        hi += extra;
    }
};

// Round tick spacing to a 1/2/5 decade.
std::vector<double> ticks(const Range& r, int target = 5) {
    const double span = r.hi - r.lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> out;
    double first = std::ceil(r.lo / step) * step;
    for (double v = first; v <= r.hi + 1e-12 * span; v += step) {
        out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    }
    return out;
}

std::string color_for_mode(Mode mode) {
    switch (mode) {
        case Mode::desired_reference: return "black";
        case Mode::non_adaptive: return "red";
        case Mode::adaptive: return "blue";
        case Mode::oracle: return "green";
    }
    return "gray";
}

void render_panel(std::ofstream& out, const PlotPanel& panel, double y_offset,
                  const std::string& x_label, bool last_panel) {
    Range xr, yr;
    for (const auto& s : panel.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.pad();
    yr.pad();
    const double x0 = kMarginLeft, x1 = kPanelWidth - kMarginRight;
    const double y0 = y_offset + kMarginTop, y1 = y_offset + kPanelHeight - kMarginBottom;
    auto sx = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto sy = [&](double v) { return y1 - (v - yr.lo) / (yr.hi - yr.lo) * (y1 - y0); };

    out << "<rect x='" << num(x0) << "' y='" << num(y0) << "' width='" << num(x1 - x0)
        << "' height='" << num(y1 - y0)
        << "' fill='white' stroke='#888' stroke-width='1'/>\n";
    out << "<text x='" << num(x0) << "' y='" << num(y0 - 8)
        << "' font-size='14' font-family='sans-serif'>" << panel.title << "</text>\n";

    for (double tv : ticks(xr)) {
        const double px = sx(tv);
        out << "<line x1='" << num(px) << "' y1='" << num(y1) << "' x2='" << num(px)
            << "' y2='" << num(y1 + 4) << "' stroke='#444'/>\n";
        out << "<text x='" << num(px) << "' y='" << num(y1 + 18)
            << "' font-size='11' font-family='sans-serif' text-anchor='middle'>" << num(tv)
            << "</text>\n";
    }
    for (double tv : ticks(yr, 4)) {
        const double py = sy(tv);
        out << "<line x1='" << num(x0 - 4) << "' y1='" << num(py) << "' x2='" << num(x0)
            << "' y2='" << num(py) << "' stroke='#444'/>\n";
        out << "<text x='" << num(x0 - 8) << "' y='" << num(py + 4)
            << "' font-size='11' font-family='sans-serif' text-anchor='end'>" << num(tv)
            << "</text>\n";
    }
    out << "<text x='" << num(x0 - 44) << "' y='" << num((y0 + y1) / 2)
        << "' font-size='12' font-family='sans-serif' transform='rotate(-90 "
        << num(x0 - 44) << " " << num((y0 + y1) / 2) << ")' text-anchor='middle'>"
        << panel.y_label << "</text>\n";
    if (last_panel) {
        out << "<text x='" << num((x0 + x1) / 2) << "' y='" << num(y1 + 32)
            << "' font-size='12' font-family='sans-serif' text-anchor='middle'>" << x_label
            << "</text>\n";
    }

    double legend_x = x0 + 10;
    for (const auto& s : panel.series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.2'";
        if (s.dashed) {
            out << " stroke-dasharray='6 4'";
        }
        out << " points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << num(sx(s.x[i])) << "," << num(sy(s.y[i])) << " ";
        }
        out << "'/>\n";
        if (!s.label.empty()) {
            out << "<line x1='" << num(legend_x) << "' y1='" << num(y0 + 12) << "' x2='"
                << num(legend_x + 18) << "' y2='" << num(y0 + 12) << "' stroke='" << s.color
                << "' stroke-width='2'" << (s.dashed ? " stroke-dasharray='6 4'" : "")
                << "/>\n";
            out << "<text x='" << num(legend_x + 22) << "' y='" << num(y0 + 16)
                << "' font-size='11' font-family='sans-serif'>" << s.label << "</text>\n";
            legend_x += 26 + 7.0 * static_cast<double>(s.label.size());
        }
    }
}

}  // namespace

void write_svg(const std::string& path, const std::string& x_label,
               const std::vector<PlotPanel>& panels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    const double height = kPanelHeight * static_cast<double>(panels.size());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(kPanelWidth)
        << "' height='" << num(height) << "' viewBox='0 0 " << num(kPanelWidth) << " "
        << num(height) << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        render_panel(out, panels[i], kPanelHeight * static_cast<double>(i), x_label,
                     i + 1 == panels.size());
    }
    out << "</svg>\n";
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::vector<std::string> emit_plots(const std::vector<Trajectory>& trajs,
                                    const Vec& theta_true, const std::string& outdir,
                                    const std::string& base) {
    if (trajs.empty()) {
        throw ContractViolation("emit_plots: need at least one trajectory");
    }
    std::vector<std::string> written;
    const SystemKind system = trajs.front().system;
    const int dof = system == SystemKind::pendulum ? 1 : 2;

    auto state_name = [dof](int i) {
        const bool momentum = i >= dof;
        const int index = momentum ? i - dof : i;
        std::string name = momentum ? "p" : "q";
        if (dof > 1) {
            name += "_" + std::to_string(index + 1);
        }
        return name;
    };

    // State overlays, one panel per state component.
    std::vector<PlotPanel> panels;
    for (int i = 0; i < 2 * dof; ++i) {
        PlotPanel panel;
        panel.title = state_name(i);
        panel.y_label = state_name(i);
        for (const auto& traj : trajs) {
            PlotSeries s;
            s.label = to_string(traj.mode);
            s.color = color_for_mode(traj.mode);
            s.x = traj.t;
            s.y.reserve(traj.x.size());
            for (const auto& xk : traj.x) s.y.push_back(xk(i));
            panel.series.push_back(std::move(s));
        }
        panels.push_back(std::move(panel));
    }
    const std::string states_path = outdir + "/" + base + "_states.svg";
    write_svg(states_path, "t [s]", panels);
    written.push_back(states_path);

    // Estimate traces with the true value as a dashed line.
    bool any_adaptive = false;
    for (const auto& traj : trajs) any_adaptive |= traj.mode == Mode::adaptive;
    if (any_adaptive) {
        std::vector<PlotPanel> est_panels;
        for (Eigen::Index i = 0; i < theta_true.size(); ++i) {
            PlotPanel panel;
            panel.title = "theta_est_" + std::to_string(i + 1);
            panel.y_label = "theta_" + std::to_string(i + 1);
            for (const auto& traj : trajs) {
                if (traj.mode != Mode::adaptive) continue;
                PlotSeries s;
                s.label = to_string(traj.mode);
                s.color = color_for_mode(traj.mode);
                s.x = traj.t;
                for (const auto& th : traj.theta_est) s.y.push_back(th(i));
                panel.series.push_back(std::move(s));
            }
            PlotSeries truth;
            truth.label = "true";
            truth.color = "black";
            truth.dashed = true;
            truth.x = {trajs.front().t.front(), trajs.front().t.back()};
            truth.y = {theta_true(i), theta_true(i)};
            panel.series.push_back(std::move(truth));
            est_panels.push_back(std::move(panel));
        }
        const std::string est_path = outdir + "/" + base + "_estimates.svg";
        write_svg(est_path, "t [s]", est_panels);
        written.push_back(est_path);
    }

    // Control signals of the controlled runs.
    bool any_controlled = false;
    for (const auto& traj : trajs) any_controlled |= traj.mode != Mode::desired_reference;
    if (any_controlled) {
        PlotPanel panel;
        panel.title = "u";
        panel.y_label = "u";
        for (const auto& traj : trajs) {
            if (traj.mode == Mode::desired_reference) continue;
            PlotSeries s;
            s.label = to_string(traj.mode);
            s.color = color_for_mode(traj.mode);
            s.x = traj.t;
            for (const auto& uk : traj.u) s.y.push_back(uk(0));
            panel.series.push_back(std::move(s));
        }
        const std::string u_path = outdir + "/" + base + "_controls.svg";
        write_svg(u_path, "t [s]", {panel});
        written.push_back(u_path);
    }
    return written;
}

}  // namespace idapbc
