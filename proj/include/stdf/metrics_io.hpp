#pragma once

#include <filesystem>
#include <string>

#include "stdf/simulation.hpp"

namespace stdf {

/// Header: dgp,estimator,k,squared_bias,variance,mse,reps,failures.
/// Output is a pure function of the table.
void write_metrics_csv(const MetricsTable& table, const std::filesystem::path& path);
std::string metrics_csv_string(const MetricsTable& table);

/// Throws std::runtime_error naming the file and row on malformed input.
MetricsTable read_metrics_csv(const std::filesystem::path& path);

}  // namespace stdf
