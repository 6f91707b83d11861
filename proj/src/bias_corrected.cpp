#include "stdf/bias_corrected.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace stdf {

namespace {

void check_k(int k) {
    if (k < 1) throw std::invalid_argument("kernel estimators need k >= 1");
}

void check_tau(double tau) {
    if (!(tau > -1.0)) throw std::invalid_argument("kernel exponent tau must exceed -1");
}

void check_rho(double rho) {
    if (!(rho < 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be negative and finite");
}

}  // namespace

double power_kernel(double t, double tau) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return (tau + 1.0) * std::pow(t, tau);
}

std::vector<double> kernel_design(int k) {
    check_k(k);
    std::vector<double> a(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) a[static_cast<std::size_t>(j - 1)] = static_cast<double>(j) / (k + 1.0);
    return a;
}

double kernel_smoothed_stdf(const LevelFunction& level_fn, int k, double tau, const Point& x) {
    return power_kernel_stdf(level_fn, k, tau, 1.0, x);
}

double kernel_smoothed_stdf(const RankMatrix& ranks, int k, double tau, const Point& x) {
    return kernel_smoothed_stdf(make_level_function(ranks), k, tau, x);
}

double power_kernel_stdf(const LevelFunction& level_fn, int k, double tau, double xi, const Point& x) {
    check_tau(tau);
    if (!(xi > 0.0)) throw std::invalid_argument("power xi must be positive");
    double total = 0.0;
    for (double a : kernel_design(k)) {
        const double v = level_fn(k * a, x);
        total += power_kernel(a, tau) * (xi == 1.0 ? v : std::pow(v, xi));
    }
    return total / k;
}

double power_kernel_stdf(const RankMatrix& ranks, int k, double tau, double xi, const Point& x) {
    return power_kernel_stdf(make_level_function(ranks), k, tau, xi, x);
}

double beirlant_alpha_from_values(std::span<const double> values, double tau_b, double rho) {
    check_rho(rho);
    check_tau(tau_b);
    const int kbar = static_cast<int>(values.size());
    if (kbar < 2) throw std::invalid_argument("alpha estimate needs kbar >= 2");
    const auto a = kernel_design(kbar);

    std::vector<double> kw(a.size());
    std::vector<double> g(a.size());
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        kw[j] = power_kernel(a[j], tau_b);
        g[j] = std::pow(a[j], -rho);
        s0 += kw[j];
        s1 += kw[j] * g[j];
    }
    const double gbar = s1 / s0;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double dg = g[j] - gbar;
        num += kw[j] * (values[j] - values[0]) * dg;
        den += kw[j] * dg * dg;
    }
    assert(den > 0.0);
    return num / den;
}

double beirlant_alpha(const LevelFunction& level_fn, int kbar, double tau_b, double rho, const Point& x) {
    const auto a = kernel_design(kbar);
    std::vector<double> values(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) values[j] = level_fn(kbar * a[j], x);
    return beirlant_alpha_from_values(values, tau_b, rho);
}

double beirlant_alpha(const RankMatrix& ranks, int kbar, double tau_b, double rho, const Point& x) {
    return beirlant_alpha(make_level_function(ranks), kbar, tau_b, rho, x);
}

double beirlant_stdf_from_parts(const Point& x, double smoothed, double alpha, int k, int kbar, double tau,
                                double rho) {
    check_rho(rho);
    check_tau(tau);
    double m0 = 0.0;
    double m1 = 0.0;
    for (double a : kernel_design(k)) {
        const double w = power_kernel(a, tau);
        m0 += w;
        m1 += w * std::pow(a, -rho);
    }
    m0 /= k;
    m1 /= k;
    const double ratio = std::pow(static_cast<double>(kbar) / k, rho);
    return clamp_stdf(x, (smoothed - ratio * alpha * m1) / m0);
}

double beirlant_stdf(const LevelFunction& level_fn, int k, const BeirlantTuning& tuning, double rho,
                     const Point& x) {
    check_k(k);
    const double smoothed = kernel_smoothed_stdf(level_fn, k, tuning.tau, x);
    const double alpha = beirlant_alpha(level_fn, tuning.kbar, tuning.tau_b, rho, x);
    return beirlant_stdf_from_parts(x, smoothed, alpha, k, tuning.kbar, tuning.tau, rho);
}

double beirlant_stdf(const RankMatrix& ranks, int k, const BeirlantTuning& tuning, double rho, const Point& x) {
    return beirlant_stdf(make_level_function(ranks), k, tuning, rho, x);
}

double dot_middle_factor(double a, double rho) {
    check_rho(rho);
    return std::pow(std::pow(a, -rho) + 1.0, -1.0 / rho);
}

double dot_stdf_unclamped(const LevelFunction& level_fn, double k, double a, double rho, const Point& x) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("dot estimator needs a in (0, 1)");
    const double b = dot_middle_factor(a, rho);
    return level_fn(k * a, x) - level_fn(k * b, x) + level_fn(k, x);
}

double dot_stdf(const LevelFunction& level_fn, double k, double a, double rho, const Point& x) {
    return clamp_stdf(x, dot_stdf_unclamped(level_fn, k, a, rho, x));
}

double dot_stdf(const RankMatrix& ranks, double k, double a, double rho, const Point& x) {
    return dot_stdf(make_level_function(ranks), k, a, rho, x);
}

double dot_aggregated_stdf(const LevelFunction& level_fn, std::span<const int> kset, double a, double rho,
                           const Point& x) {
    if (kset.empty()) throw std::invalid_argument("dot aggregation needs a nonempty k set");
    std::vector<double> values;
    values.reserve(kset.size());
    for (int k : kset) values.push_back(dot_stdf(level_fn, k, a, rho, x));
    return clamp_stdf(x, median(std::move(values)));
}

double dot_aggregated_stdf(const RankMatrix& ranks, std::span<const int> kset, double a, double rho,
                           const Point& x) {
    return dot_aggregated_stdf(make_level_function(ranks), kset, a, rho, x);
}

}  // namespace stdf
