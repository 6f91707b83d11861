#pragma once

#include <span>
#include <vector>

#include "stdf/empirical.hpp"
#include "stdf/ratio_rho.hpp"

namespace stdf {

/// Tuning of the penalized least-squares estimator of rho.
///
/// For each x the empirical curve i -> L_i(x), i in index_set, is regressed
/// on (i / k_rho)^{-r}. The fitted r minimizes the weighted residual sum of
/// squares plus eta / |r| times the best unpenalized fit, over `grid`.
struct PenalizedRhoConfig {
    std::vector<int> index_set;  ///< ascending levels M_n
    double k_rho = 1000.0;
    std::vector<double> weights;  ///< aligned with index_set, positive, sum 1
    double k_lo = -4.0;
    double k_hi = -0.1;
    double eta = 0.5;
    std::vector<double> grid;  ///< ascending candidate r values in [k_lo, k_hi]
    std::vector<Point> eval_points;

    /// M_n = {50, 100, ..., 1000}, w ∝ i, k_rho = 1000, [-4, -0.1],
    /// eta = 0.5, grid step 0.1, X_rho = {(0.3,0.3), ..., (0.7,0.7)}.
    static PenalizedRhoConfig defaults();

    void validate() const;
};

/// w_i = i / sum(M_n).
std::vector<double> proportional_weights(std::span<const int> index_set);

/// {lo, lo + step, ..., hi}, built from integer multiples of step so that
/// decimal grids hit their endpoints exactly.
std::vector<double> make_grid(double lo, double hi, double step);

/// sum_i w_i [curve_i - b0 - b1 (i / k_rho)^{-r}]^2, curve aligned with index_set.
double rss_plain(std::span<const double> curve, const PenalizedRhoConfig& cfg, double b0, double b1, double r);

struct ProfileFit {
    double b0 = 0.0;
    double b1 = 0.0;
    double rss = 0.0;
};

/// Weighted least-squares (b0, b1) at fixed r and the attained RSS, which
/// equals S_yy (1 - S_xy^2 / (S_yy S_xx)). Throws DegenerateEstimate for a
/// flat curve.
ProfileFit profile_rss(std::span<const double> curve, const PenalizedRhoConfig& cfg, double r);

struct PenalizedFit {
    double b0 = 0.0;
    double b1 = 0.0;
    double rho = 0.0;
};

/// Two-pass grid search: c = min_r RSS(r), then argmin_r RSS(r) + (eta/|r|) c,
/// ties going to the most negative r. Throws DegenerateEstimate for a flat curve.
PenalizedFit rho_penalized_pointwise(std::span<const double> curve, const PenalizedRhoConfig& cfg);

/// curve_i = L(i, x) for i in index_set.
std::vector<double> level_curve(const LevelFunction& level_fn, const PenalizedRhoConfig& cfg, const Point& x);

/// Mean over eval_points of the pointwise estimate; flat curves count as -1.
RhoEstimate rho_penalized_agg(const LevelFunction& level_fn, const PenalizedRhoConfig& cfg);
RhoEstimate rho_penalized_agg(const RankMatrix& ranks, const PenalizedRhoConfig& cfg);

}  // namespace stdf
