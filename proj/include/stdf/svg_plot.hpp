#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stdf/simulation.hpp"

namespace stdf {

enum class Metric { squared_bias, variance, mse };

std::string_view to_string(Metric m);

struct SeriesStyle {
    std::string color;
    std::string dasharray;  ///< empty for a solid line
};

/// Line style for an estimator id; unknown ids are drawn in gray.
SeriesStyle series_style(std::string_view estimator_id);

struct PlotOptions {
    bool log_y = false;
    int width = 640;
    int height = 420;
};

/// One metric against k for every estimator of `dgp` found in `rows`.
std::string render_metric_svg(const std::vector<MetricsRow>& rows, std::string_view dgp, Metric metric,
                              const PlotOptions& options = {});

/// Writes <out_dir>/<dgp>_<metric>.svg for each dgp and metric; returns the
/// paths written.
std::vector<std::filesystem::path> write_metric_plots(const std::vector<MetricsRow>& rows,
                                                      const std::filesystem::path& out_dir,
                                                      const PlotOptions& options = {});

}  // namespace stdf
