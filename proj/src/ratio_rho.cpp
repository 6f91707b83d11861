#include "stdf/ratio_rho.hpp"

#include <algorithm>
#include <cmath>

#include "stdf/bias_corrected.hpp"

namespace stdf {

void RatioRhoConfig::validate() const {
    if (kbar < 1) throw std::invalid_argument("ratio rho: kbar must be >= 1");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("ratio rho: a must lie in (0, 1)");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("ratio rho: r must lie in (0, 1)");
    if (!(fallback_threshold < 0.0)) throw std::invalid_argument("ratio rho: fallback threshold must be negative");
    if (!(fallback_value <= fallback_threshold)) {
        throw std::invalid_argument("ratio rho: fallback value must not exceed the fallback threshold");
    }
}

double ratio_rho(double delta_rx, double delta_x, double r) {
    if (delta_x == 0.0 || delta_rx == 0.0 || !std::isfinite(delta_x) || !std::isfinite(delta_rx)) {
        throw DegenerateEstimate("ratio rho: zero or non-finite difference");
    }
    const double raw = 1.0 - std::log(std::fabs(delta_rx / delta_x)) / std::log(r);
    return std::min(raw, 0.0);
}

double apply_fallback(double value, const RatioRhoConfig& cfg) noexcept {
    return value > cfg.fallback_threshold ? cfg.fallback_value : value;
}

double homogeneity_gap(const PointFunctional& f, double a, const Point& x) {
    return f(x.scaled(a)) / a - f(x);
}

double ratio_rho_estimate(const PointFunctional& f, const RatioRhoConfig& cfg, const Point& x) {
    cfg.validate();
    try {
        const double dx = homogeneity_gap(f, cfg.a, x);
        const double drx = homogeneity_gap(f, cfg.a, x.scaled(cfg.r));
        return apply_fallback(ratio_rho(drx, dx, cfg.r), cfg);
    } catch (const DegenerateEstimate&) {
        return cfg.fallback_value;
    }
}

double delta_fougeres(const LevelFunction& level_fn, int kbar, double a, const Point& x) {
    return homogeneity_gap([&](const Point& p) { return level_fn(kbar, p); }, a, x);
}

double delta_fougeres(const RankMatrix& ranks, int kbar, double a, const Point& x) {
    return delta_fougeres(make_level_function(ranks), kbar, a, x);
}

double rho_fougeres(const LevelFunction& level_fn, const RatioRhoConfig& cfg, const Point& x) {
    return ratio_rho_estimate([&](const Point& p) { return level_fn(cfg.kbar, p); }, cfg, x);
}

double rho_fougeres(const RankMatrix& ranks, const RatioRhoConfig& cfg, const Point& x) {
    return rho_fougeres(make_level_function(ranks), cfg, x);
}

double rho_beirlant(const LevelFunction& level_fn, const RatioRhoConfig& cfg, double tau, const Point& x) {
    return ratio_rho_estimate([&](const Point& p) { return kernel_smoothed_stdf(level_fn, cfg.kbar, tau, p); },
                              cfg, x);
}

double rho_beirlant(const RankMatrix& ranks, const RatioRhoConfig& cfg, double tau, const Point& x) {
    return rho_beirlant(make_level_function(ranks), cfg, tau, x);
}

double delta_goegebeur(const LevelFunction& level_fn, int kbar, double a, double tau, double xi1, double xi2,
                       const Point& x) {
    const double lhs = std::pow(std::pow(a, -xi1) * power_kernel_stdf(level_fn, kbar, tau, xi1, x.scaled(a)),
                                1.0 / xi1);
    const double rhs = std::pow(power_kernel_stdf(level_fn, kbar, tau, xi2, x), 1.0 / xi2);
    return lhs - rhs;
}

double rho_goegebeur(const LevelFunction& level_fn, const RatioRhoConfig& cfg, double tau, double xi1,
                     double xi2, const Point& x) {
    cfg.validate();
    if (!(xi1 > 0.0 && xi2 > 0.0)) throw std::invalid_argument("goegebeur rho: xi1, xi2 must be positive");
    try {
        const double dx = delta_goegebeur(level_fn, cfg.kbar, cfg.a, tau, xi1, xi2, x);
        const double drx = delta_goegebeur(level_fn, cfg.kbar, cfg.a, tau, xi1, xi2, x.scaled(cfg.r));
        return apply_fallback(ratio_rho(drx, dx, cfg.r), cfg);
    } catch (const DegenerateEstimate&) {
        return cfg.fallback_value;
    }
}

double rho_goegebeur(const RankMatrix& ranks, const RatioRhoConfig& cfg, double tau, double xi1, double xi2,
                     const Point& x) {
    return rho_goegebeur(make_level_function(ranks), cfg, tau, xi1, xi2, x);
}

RhoEstimate rho_fougeres_agg(const LevelFunction& level_fn, const RatioRhoConfig& cfg,
                             std::span<const Point> eval_points) {
    if (eval_points.empty()) throw std::invalid_argument("aggregated rho needs evaluation points");
    RhoEstimate out;
    out.per_point.reserve(eval_points.size());
    double total = 0.0;
    for (const Point& x : eval_points) {
        out.per_point.push_back(rho_fougeres(level_fn, cfg, x));
        total += out.per_point.back();
    }
    out.value = total / static_cast<double>(eval_points.size());
    return out;
}

RhoEstimate rho_fougeres_agg(const RankMatrix& ranks, const RatioRhoConfig& cfg,
                             std::span<const Point> eval_points) {
    return rho_fougeres_agg(make_level_function(ranks), cfg, eval_points);
}

std::vector<Point> default_rho_points() {
    std::vector<Point> pts;
    for (int i = 30; i <= 70; i += 5) {
        const double t = i / 100.0;
        pts.push_back(Point{t, t});
    }
    return pts;
}

}  // namespace stdf
