#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stdf/empirical.hpp"

namespace stdf {

/// Raised when a ratio-of-differences estimate has a zero (or non-finite)
/// difference in its numerator or denominator, or a regression curve is flat.
class DegenerateEstimate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RatioRhoConfig {
    int kbar = 990;
    double a = 0.4;
    double r = 0.4;
    /// Raw estimates above this value are replaced by fallback_value.
    double fallback_threshold = -0.1;
    double fallback_value = -1.0;

    void validate() const;
};

/// A second-order parameter estimate. Aggregated estimators also report the
/// per-point values that were averaged, in evaluation-point order.
struct RhoEstimate {
    double value = -1.0;
    std::vector<double> per_point;
};

/// (1 - log|delta_rx / delta_x| / log r) capped at 0. Throws
/// DegenerateEstimate if either difference is zero or non-finite.
double ratio_rho(double delta_rx, double delta_x, double r);

double apply_fallback(double value, const RatioRhoConfig& cfg) noexcept;

/// A homogeneous-of-degree-one functional of x (up to its bias term) whose
/// deviation from homogeneity drives the ratio estimators.
using PointFunctional = std::function<double(const Point& x)>;

/// a^{-1} F(a x) - F(x).
double homogeneity_gap(const PointFunctional& f, double a, const Point& x);

/// ratio_rho from F at x and r x, followed by the fallback rule. Degenerate
/// ratios map to the fallback value.
double ratio_rho_estimate(const PointFunctional& f, const RatioRhoConfig& cfg, const Point& x);

/// a^{-1} L_kbar(a x) - L_kbar(x).
double delta_fougeres(const LevelFunction& level_fn, int kbar, double a, const Point& x);
double delta_fougeres(const RankMatrix& ranks, int kbar, double a, const Point& x);

/// Ratio estimator on the empirical stdf at level kbar.
double rho_fougeres(const LevelFunction& level_fn, const RatioRhoConfig& cfg, const Point& x);
double rho_fougeres(const RankMatrix& ranks, const RatioRhoConfig& cfg, const Point& x);

/// Ratio estimator on the kernel-smoothed stdf with exponent tau.
double rho_beirlant(const LevelFunction& level_fn, const RatioRhoConfig& cfg, double tau, const Point& x);
double rho_beirlant(const RankMatrix& ranks, const RatioRhoConfig& cfg, double tau, const Point& x);

/// Ratio estimator built from the xi-th power kernel averages:
///   [a^{-xi1} L~_{kbar,xi1}(a x)]^{1/xi1} - [L~_{kbar,xi2}(x)]^{1/xi2}.
double delta_goegebeur(const LevelFunction& level_fn, int kbar, double a, double tau, double xi1, double xi2,
                       const Point& x);
double rho_goegebeur(const LevelFunction& level_fn, const RatioRhoConfig& cfg, double tau, double xi1,
                     double xi2, const Point& x);
double rho_goegebeur(const RankMatrix& ranks, const RatioRhoConfig& cfg, double tau, double xi1, double xi2,
                     const Point& x);

/// Mean over eval_points of rho_fougeres (fallback applied per point).
RhoEstimate rho_fougeres_agg(const LevelFunction& level_fn, const RatioRhoConfig& cfg,
                             std::span<const Point> eval_points);
RhoEstimate rho_fougeres_agg(const RankMatrix& ranks, const RatioRhoConfig& cfg,
                             std::span<const Point> eval_points);

/// {(0.3,0.3), (0.35,0.35), ..., (0.7,0.7)}.
std::vector<Point> default_rho_points();

}  // namespace stdf
