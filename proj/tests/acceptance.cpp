// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "stdf/bias_corrected.hpp"
#include "stdf/dgp.hpp"
#include "stdf/empirical.hpp"
#include "stdf/metrics_io.hpp"
#include "stdf/penalized_rho.hpp"
#include "stdf/simulation.hpp"

using namespace stdf;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<double> exact_curve(const PenalizedRhoConfig& cfg, double b0, double b1, double r) {
    std::vector<double> y;
    for (int i : cfg.index_set) y.push_back(b0 + b1 * std::pow(i / cfg.k_rho, -r));
    return y;
}

std::vector<double> noisy_curve(std::mt19937_64& rng, const PenalizedRhoConfig& cfg) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 1.0);
    const double b0 = 1 + u(rng), b1 = 0.05 + 0.3 * u(rng), r = -3 + 2.8 * u(rng);
    auto y = exact_curve(cfg, b0, b1, r);
    for (auto& v : y) v += 0.02 * b1 * z(rng);
    return y;
}

Outcome empirical_oracle() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mismatches = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 49, d = 2 + rng() % 2;
        const auto s = oracle::random_sample(rng, n, d);
        const double k = 1 + static_cast<double>(rng() % n);
        std::vector<double> xv(d);
        for (auto& v : xv) v = u(rng);
        const Point x(xv);
        mismatches += empirical_stdf(compute_ranks(s), k, x) != oracle::empirical_stdf(s, k, x);
    }
    return {mismatches == 0, std::to_string(mismatches) + "/200 mismatches"};
}

Outcome dot_telescoping() {
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double l0 = 1.05 + 0.9 * u(rng), c = -1 + 2 * u(rng), rho = -3 + 2.8 * u(rng);
        const double k = 50 + 900 * u(rng);
        const LevelFunction fn = [=](double m, const Point&) { return l0 + c * std::pow(m / k, -rho); };
        worst = std::max(worst, std::fabs(dot_stdf(fn, k, 0.4, rho, {1, 1}) - l0));
    }
    return {worst <= 1e-12, fmt("max |error| %.3g", worst)};
}

Outcome penalized_recovery() {
    auto cfg = PenalizedRhoConfig::defaults();
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int wrong = 0, total = 0;
    for (double eta : {0.0, 0.5, 2.0}) {
        cfg.eta = eta;
        for (double r0 : cfg.grid) {
            const double b0 = -2 + 4 * u(rng);
            const double b1 = (u(rng) < 0.5 ? -1 : 1) * (0.05 + 2 * u(rng));
            wrong += rho_penalized_pointwise(exact_curve(cfg, b0, b1, r0), cfg).rho != r0;
            ++total;
        }
    }
    return {wrong == 0, std::to_string(wrong) + "/" + std::to_string(total) + " wrong"};
}

Outcome profiling() {
    const auto cfg = PenalizedRhoConfig::defaults();
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto y = noisy_curve(rng, cfg);
        const double r = cfg.grid[rng() % cfg.grid.size()];
        worst = std::max(worst, std::fabs(profile_rss(y, cfg, r).rss - oracle::lattice_min_rss(y, cfg, r)));
    }
    return {worst <= 1e-9, fmt("max |rss gap| %.3g", worst)};
}

Outcome penalty_invariants() {
    auto cfg = PenalizedRhoConfig::defaults();
    std::mt19937_64 rng(105);
    int monotone_bad = 0, scale_bad = 0;
    for (int t = 0; t < 50; ++t) {
        const auto y = noisy_curve(rng, cfg);
        double prev = 0.0;
        for (double eta : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
            cfg.eta = eta;
            const double mag = std::fabs(rho_penalized_pointwise(y, cfg).rho);
            if (mag < prev) {
                ++monotone_bad;
                break;
            }
            prev = mag;
        }
    }
    cfg = PenalizedRhoConfig::defaults();
    for (int t = 0; t < 50; ++t) {
        const auto y = noisy_curve(rng, cfg);
        cfg.k_rho = 1000;
        const double base = rho_penalized_pointwise(y, cfg).rho;
        for (double k : {1.0, 37.5, 5000.0}) {
            cfg.k_rho = k;
            if (rho_penalized_pointwise(y, cfg).rho != base) {
                ++scale_bad;
                break;
            }
        }
    }
    return {monotone_bad == 0 && scale_bad == 0, std::to_string(monotone_bad) + "/50 non-monotone, " +
                                                     std::to_string(scale_bad) + "/50 scale-dependent"};
}

Outcome true_vs_oracle() {
    const std::vector<Point> xs{{1, 1}, {0.3, 0.7}, {1.5, 0.5}};
    bool ok = true;
    double worst_ratio = 0.0;
    std::string worst;
    for (const auto& name : dgp_names()) {
        const auto spec = dgp_from_name(name);
        const auto est = mc_stdf_oracle(spec, xs, 200, 2000000, RngStream{106, dgp_index(name), 0});
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double gap = std::fabs(true_stdf(spec, xs[i]) - est[i].value);
            const double tol = std::max(0.01, 4 * est[i].standard_error);
            if (gap / tol > worst_ratio) worst_ratio = gap / tol, worst = name;
            ok = ok && gap <= tol;
        }
    }
    const double a1 = true_stdf(dgp_from_name("archimax-logistic"), {1, 1});
    const double a2 = true_stdf(dgp_from_name("archimax-mixed"), {1, 1});
    const bool anchors = std::fabs(a1 - std::sqrt(2.0)) < 1e-12 && std::fabs(a2 - 1.5) < 1e-12;
    return {ok && anchors, fmt("worst gap/tol %.3f", worst_ratio) + " at " + worst +
                               fmt(", anchors %.12g %.12g", a1, a2)};
}

Outcome rho_recovery() {
    const auto cfg = PenalizedRhoConfig::defaults();
    const auto median_rho = [&](const char* name) {
        const auto spec = dgp_from_name(name);
        std::vector<double> v;
        for (std::uint64_t r = 0; r < 100; ++r) {
            const auto s = sample_dgp(spec, 1000, RngStream{107, dgp_index(name), r});
            v.push_back(rho_penalized_agg(compute_ranks(s), cfg).value);
        }
        return median(v);
    };
    const double m4 = median_rho("t4"), m6 = median_rho("t6");
    const bool ok = m4 >= -0.8 && m4 <= -0.3 && m6 >= -0.6 && m6 <= -0.15;
    return {ok, fmt("median t4 %.3f, t6 %.3f", m4, m6)};
}

Outcome mse_ordering(MetricsTable& table_out) {
    auto c = ExperimentConfig::defaults(dgp_from_name("cauchy"));
    c.reps = 200;
    c.n = 1000;
    c.seed = 1;
    c.estimators = {estimator_from_id("empirical"), estimator_from_id("dotagg-fougeres-agg"),
                    estimator_from_id("dotagg-penalized")};
    table_out = run_experiment(c, 1);
    const auto find = [&](const std::string& id, int k) -> const MetricsRow& {
        for (const auto& r : table_out.rows) {
            if (r.estimator == id && r.k == k) return r;
        }
        throw std::runtime_error("missing row " + id);
    };
    bool mse_ok = true;
    std::ostringstream bad;
    int var_ok = 0;
    for (int k : c.k_grid) {
        const auto& pen = find("dotagg-penalized", k);
        if (k >= 501 && !(pen.mse < find("empirical", k).mse)) {
            mse_ok = false;
            bad << " mse@" << k;
        }
        var_ok += pen.variance <= find("dotagg-fougeres-agg", k).variance;
    }
    const double share = static_cast<double>(var_ok) / c.k_grid.size();
    return {mse_ok && share >= 0.7,
            fmt("variance share %.2f", share) + (mse_ok ? ", mse below empirical for k >= 501" : ", failed:" + bad.str())};
}

Outcome identity_and_determinism(const MetricsTable& big) {
    double worst = 0.0;
    const auto check = [&](const MetricsTable& t) {
        for (const auto& r : t.rows) {
            const double rel = std::fabs(r.mse - (r.squared_bias + r.variance)) / std::max(r.mse, 1e-300);
            worst = std::max(worst, r.mse == 0 ? 0.0 : rel);
        }
    };
    auto c = ExperimentConfig::defaults(dgp_from_name("t4"));
    c.reps = 20;
    c.seed = 109;
    const auto one = run_experiment(c, 1);
    const auto two = run_experiment(c, 2);
    check(one);
    check(big);
    const bool same = metrics_csv_string(one) == metrics_csv_string(two);
    return {worst <= 1e-10 && same, fmt("max relative gap %.3g", worst) + (same ? ", CSVs identical" : ", CSVs differ")};
}

}  // namespace

int main() {
    criterion(1, "empirical stdf matches sort-based oracle", empirical_oracle);
    criterion(2, "dot estimator telescopes synthetic curves", dot_telescoping);
    criterion(3, "penalized rho recovers every grid point", penalized_recovery);
    criterion(4, "profiled rss matches lattice search", profiling);
    criterion(5, "penalty monotonicity and k_rho invariance", penalty_invariants);
    criterion(6, "true stdf agrees with Monte Carlo oracle", true_vs_oracle);
    criterion(7, "penalized rho medians on t4 and t6", rho_recovery);
    MetricsTable cauchy;
    criterion(8, "cauchy MSE and variance ordering", [&] { return mse_ordering(cauchy); });
    criterion(9, "bias-variance identity and worker determinism", [&] { return identity_and_determinism(cauchy); });
    return failures == 0 ? 0 : 1;
}
