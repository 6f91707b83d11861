#pragma once

#include <span>
#include <vector>

#include "stdf/empirical.hpp"

namespace stdf {

/// Power kernel K(t) = (tau + 1) t^tau on (0, 1).
double power_kernel(double t, double tau);

/// Kernel design points a_{j,k} = j / (k + 1), j = 1..k.
std::vector<double> kernel_design(int k);

/// (1/k) sum_j K(a_{j,k}) L(k a_{j,k}, x).
double kernel_smoothed_stdf(const LevelFunction& level_fn, int k, double tau, const Point& x);
double kernel_smoothed_stdf(const RankMatrix& ranks, int k, double tau, const Point& x);

/// (1/k) sum_j K(a_{j,k}) L(k a_{j,k}, x)^xi.
double power_kernel_stdf(const LevelFunction& level_fn, int k, double tau, double xi, const Point& x);
double power_kernel_stdf(const RankMatrix& ranks, int k, double tau, double xi, const Point& x);

/// Slope estimate alpha~_kbar(x, rho): the ratio of kernel-weighted double
/// sums over pairs (j, l) of design points. `values[j-1]` holds
/// L(kbar a_{j,kbar}, x). Evaluated in O(kbar) through the centred form
///
///   sum_j K_j (V_j - V_1)(g_j - gbar) / sum_j K_j (g_j - gbar)^2,  g_j = a_j^{-rho},
///
/// which equals the double-sum ratio and is exactly zero for constant V.
double beirlant_alpha_from_values(std::span<const double> values, double tau_b, double rho);
double beirlant_alpha(const LevelFunction& level_fn, int kbar, double tau_b, double rho, const Point& x);
double beirlant_alpha(const RankMatrix& ranks, int kbar, double tau_b, double rho, const Point& x);

struct BeirlantTuning {
    int kbar = 990;
    double tau = 5.0;
    double tau_b = 0.5;
};

/// Combines the smoothed estimate L~_k(x) and alpha~_kbar(x, rho) into the
/// bias-corrected value and clamps it.
double beirlant_stdf_from_parts(const Point& x, double smoothed, double alpha, int k, int kbar, double tau,
                                double rho);
double beirlant_stdf(const LevelFunction& level_fn, int k, const BeirlantTuning& tuning, double rho,
                     const Point& x);
double beirlant_stdf(const RankMatrix& ranks, int k, const BeirlantTuning& tuning, double rho, const Point& x);

/// Middle level factor b = (a^{-rho} + 1)^{-1/rho} of the dot estimator.
double dot_middle_factor(double a, double rho);

/// L(ka, x) - L(kb, x) + L(k, x) without truncation.
double dot_stdf_unclamped(const LevelFunction& level_fn, double k, double a, double rho, const Point& x);
double dot_stdf(const LevelFunction& level_fn, double k, double a, double rho, const Point& x);
double dot_stdf(const RankMatrix& ranks, double k, double a, double rho, const Point& x);

/// Median over kset of clamped dot estimates, clamped again.
double dot_aggregated_stdf(const LevelFunction& level_fn, std::span<const int> kset, double a, double rho,
                           const Point& x);
double dot_aggregated_stdf(const RankMatrix& ranks, std::span<const int> kset, double a, double rho,
                           const Point& x);

}  // namespace stdf
