#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stdf/simulation.hpp"

namespace stdf {

/// Flat key-value configuration text:
///
///   # comment
///   experiment.n = 1000
///   tuning.penalized.eta = 0.5
///
/// Throws std::invalid_argument naming the line on malformed input.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies entries to `config`. Tuning keys apply to every estimator.
/// Unknown keys are rejected.
void apply_entries(ExperimentConfig& config, const std::map<std::string, std::string>& entries);

/// Every configurable field, defaults included, in a fixed key order.
/// Feeding the result to apply_entries reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);

/// FNV-1a hash of config_entries, hex encoded.
std::string config_fingerprint(const ExperimentConfig& config);

/// Loads a key-value file or a JSON run manifest (detected by a leading '{')
/// on top of `base`.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base);

/// JSON manifest with the resolved config, seed, worker count and timestamp.
void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config, unsigned workers,
                    const std::string& config_source);

// Text forms shared by the config file and the command line.
std::string format_double(double v);
std::vector<int> parse_int_list(std::string_view s);
std::vector<double> parse_double_list(std::string_view s);
/// Points as "x1:x2,y1:y2" (coordinates joined by ':', points by ',').
std::vector<Point> parse_points(std::string_view s);
std::string format_points(const std::vector<Point>& points);

}  // namespace stdf
