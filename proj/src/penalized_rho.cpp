#include "stdf/penalized_rho.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stdf {

namespace {

constexpr double kFlatCurveRho = -1.0;

std::vector<double> predictor(const PenalizedRhoConfig& cfg, double r) {
    std::vector<double> xs(cfg.index_set.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::pow(cfg.index_set[i] / cfg.k_rho, -r);
    return xs;
}

void check_curve(std::span<const double> curve, const PenalizedRhoConfig& cfg) {
    if (curve.size() != cfg.index_set.size()) {
        throw std::invalid_argument("curve length does not match the index set");
    }
}

}  // namespace

PenalizedRhoConfig PenalizedRhoConfig::defaults() {
    PenalizedRhoConfig cfg;
    for (int i = 50; i <= 1000; i += 50) cfg.index_set.push_back(i);
    cfg.k_rho = 1000.0;
    cfg.weights = proportional_weights(cfg.index_set);
    cfg.k_lo = -4.0;
    cfg.k_hi = -0.1;
    cfg.eta = 0.5;
    cfg.grid = make_grid(cfg.k_lo, cfg.k_hi, 0.1);
    cfg.eval_points = default_rho_points();
    return cfg;
}

void PenalizedRhoConfig::validate() const {
    if (index_set.size() < 2) throw std::invalid_argument("penalized rho: index set needs at least two levels");
    for (std::size_t i = 0; i < index_set.size(); ++i) {
        if (index_set[i] < 1) throw std::invalid_argument("penalized rho: levels must be positive");
        if (i > 0 && index_set[i] <= index_set[i - 1]) {
            throw std::invalid_argument("penalized rho: index set must be strictly ascending");
        }
    }
    if (!(k_rho > 0.0)) throw std::invalid_argument("penalized rho: k_rho must be positive");
    if (weights.size() != index_set.size()) throw std::invalid_argument("penalized rho: one weight per level");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("penalized rho: weights must be positive");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("penalized rho: weights must sum to one");
    if (!(k_lo < k_hi && k_hi < 0.0)) throw std::invalid_argument("penalized rho: need k_lo < k_hi < 0");
    if (!(eta >= 0.0)) throw std::invalid_argument("penalized rho: eta must be nonnegative");
    if (grid.empty()) throw std::invalid_argument("penalized rho: empty search grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < k_lo || grid[i] > k_hi) throw std::invalid_argument("penalized rho: grid outside bounds");
        if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("penalized rho: grid must ascend");
    }
}

std::vector<double> proportional_weights(std::span<const int> index_set) {
    const double total = std::accumulate(index_set.begin(), index_set.end(), 0.0);
    std::vector<double> w(index_set.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = index_set[i] / total;
    return w;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("grid needs lo <= hi and a positive step");
    const auto first = static_cast<long long>(std::llround(lo / step));
    const auto last = static_cast<long long>(std::llround(hi / step));
    std::vector<double> grid;
    // dividing by 1/step (e.g. -40 / 10) reproduces decimal literals exactly
    const double inv = std::round(1.0 / step);
    const bool integral_inverse = std::fabs(inv * step - 1.0) < 1e-12;
    for (long long m = first; m <= last; ++m) {
        grid.push_back(integral_inverse ? static_cast<double>(m) / inv : static_cast<double>(m) * step);
    }
    return grid;
}

double rss_plain(std::span<const double> curve, const PenalizedRhoConfig& cfg, double b0, double b1, double r) {
    check_curve(curve, cfg);
    double total = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double resid = curve[i] - b0 - b1 * std::pow(cfg.index_set[i] / cfg.k_rho, -r);
        total += cfg.weights[i] * resid * resid;
    }
    return total;
}

ProfileFit profile_rss(std::span<const double> curve, const PenalizedRhoConfig& cfg, double r) {
    check_curve(curve, cfg);
    if (std::all_of(curve.begin(), curve.end(), [&](double v) { return v == curve[0]; })) {
        throw DegenerateEstimate("penalized rho: flat curve");
    }
    const auto xs = predictor(cfg, r);
    double xbar = 0.0;
    double ybar = 0.0;
    double wsum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += cfg.weights[i] * xs[i];
        ybar += cfg.weights[i] * curve[i];
        wsum += cfg.weights[i];
    }
    xbar /= wsum;
    ybar /= wsum;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - xbar;
        sxx += cfg.weights[i] * dx * dx;
        sxy += cfg.weights[i] * dx * (curve[i] - ybar);
    }
    if (!(sxx > 0.0)) throw DegenerateEstimate("penalized rho: constant predictor");

    ProfileFit fit;
    fit.b1 = sxy / sxx;
    fit.b0 = ybar - fit.b1 * xbar;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = curve[i] - fit.b0 - fit.b1 * xs[i];
        fit.rss += cfg.weights[i] * resid * resid;
    }
    return fit;
}

PenalizedFit rho_penalized_pointwise(std::span<const double> curve, const PenalizedRhoConfig& cfg) {
    check_curve(curve, cfg);
    if (cfg.grid.empty()) throw std::invalid_argument("penalized rho: empty search grid");

    std::vector<ProfileFit> fits;
    fits.reserve(cfg.grid.size());
    for (double r : cfg.grid) fits.push_back(profile_rss(curve, cfg, r));

    const double best_plain =
        std::min_element(fits.begin(), fits.end(), [](const auto& a, const auto& b) { return a.rss < b.rss; })
            ->rss;

    // grid ascends, so keeping the first strict minimum favours the most negative r
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
        const double score = fits[g].rss + cfg.eta / std::fabs(cfg.grid[g]) * best_plain;
        if (g == 0 || score < best_score) {
            best = g;
            best_score = score;
        }
    }
    return {fits[best].b0, fits[best].b1, cfg.grid[best]};
}

std::vector<double> level_curve(const LevelFunction& level_fn, const PenalizedRhoConfig& cfg, const Point& x) {
    std::vector<double> curve(cfg.index_set.size());
    for (std::size_t i = 0; i < curve.size(); ++i) curve[i] = level_fn(cfg.index_set[i], x);
    return curve;
}

RhoEstimate rho_penalized_agg(const LevelFunction& level_fn, const PenalizedRhoConfig& cfg) {
    cfg.validate();
    if (cfg.eval_points.empty()) throw std::invalid_argument("penalized rho: no evaluation points");
    RhoEstimate out;
    double total = 0.0;
    for (const Point& x : cfg.eval_points) {
        double rho = kFlatCurveRho;
        try {
            rho = rho_penalized_pointwise(level_curve(level_fn, cfg, x), cfg).rho;
        } catch (const DegenerateEstimate&) {
        }
        out.per_point.push_back(rho);
        total += rho;
    }
    out.value = total / static_cast<double>(cfg.eval_points.size());
    return out;
}

RhoEstimate rho_penalized_agg(const RankMatrix& ranks, const PenalizedRhoConfig& cfg) {
    return rho_penalized_agg(make_level_function(ranks), cfg);
}

}  // namespace stdf
