#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stdf/sample.hpp"

namespace stdf {

/// How a threshold index floor(k * x_j) larger than n is treated.
enum class ThresholdPolicy {
    strict,    ///< throw std::out_of_range
    saturate,  ///< every observation exceeds in that coordinate
};

/// Rank-based empirical stable tail dependence function
///
///   (1/k) #{ i : X_i^(j) >= X_{n - floor(k x_j) + 1, n}^(j) for some j }.
///
/// k may be any positive real. A coordinate with floor(k x_j) == 0 contributes
/// no exceedances, so the estimate at the origin is 0.
double empirical_stdf(const RankMatrix& ranks, double k, const Point& x,
                      ThresholdPolicy policy = ThresholdPolicy::strict);

/// empirical_stdf at level k * a.
double empirical_stdf_at_level(const RankMatrix& ranks, double k, double a, const Point& x,
                               ThresholdPolicy policy = ThresholdPolicy::strict);

/// The empirical estimator viewed as a function of (level, x). All
/// bias-corrected estimators are written against this so that tests can
/// substitute synthetic level curves.
using LevelFunction = std::function<double(double level, const Point& x)>;

/// Binds `ranks` by reference; the RankMatrix must outlive the result.
LevelFunction make_level_function(const RankMatrix& ranks,
                                  ThresholdPolicy policy = ThresholdPolicy::strict);

/// Projects v onto [max_j x_j, sum_j x_j].
double clamp_stdf(const Point& x, double v) noexcept;

/// Median; even length gives the mean of the two central values.
/// Throws std::invalid_argument on empty input.
double median(std::vector<double> values);

}  // namespace stdf
