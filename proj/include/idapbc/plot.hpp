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

#ifndef IDAPBC_PLOT_HPP
#define IDAPBC_PLOT_HPP

#include <string>
#include <vector>

#include "idapbc/sim.hpp"

namespace idapbc {

/// One curve of a panel.
struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<double> x, y;
    bool dashed = false;
};

/// One chart panel: titled axes plus its curves.
struct PlotPanel {
    std::string title;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Writes vertically stacked panels as a standalone SVG image.
void write_svg(const std::string& path, const std::string& x_label,
               const std::vector<PlotPanel>& panels);

/// Emits the figure set of a run group into @p outdir with file names
/// starting with @p base: state overlays for all runs, estimate traces with
/// true-value lines when an adaptive run is present, and control signals for
/// the controlled runs. Returns the written paths.
std::vector<std::string> emit_plots(const std::vector<Trajectory>& trajs,
                                    const Vec& theta_true, const std::string& outdir,
                                    const std::string& base);

}  // namespace idapbc

#endif  // IDAPBC_PLOT_HPP
