#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stdf/dgp.hpp"
#include "stdf/empirical.hpp"
#include "stdf/student_t.hpp"

using namespace stdf;

namespace {

double kendall_tau(const Sample& s) {
    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        for (std::size_t j = i + 1; j < s.n(); ++j) {
            const double p = (s(i, 0) - s(j, 0)) * (s(i, 1) - s(j, 1));
            concordant += p > 0;
            discordant += p < 0;
        }
    }
    const double pairs = 0.5 * static_cast<double>(s.n()) * static_cast<double>(s.n() - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

double ks_uniform(const Sample& s, std::size_t col) {
    std::vector<double> v(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) v[i] = s(i, col);
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        d = std::max({d, (i + 1) / n - v[i], v[i] - i / n});
    }
    return d;
}

double correlation(const Sample& s) {
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < s.n(); ++i) m0 += s(i, 0), m1 += s(i, 1);
    m0 /= s.n(), m1 /= s.n();
    double c = 0, v0 = 0, v1 = 0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        c += (s(i, 0) - m0) * (s(i, 1) - m1);
        v0 += (s(i, 0) - m0) * (s(i, 0) - m0);
        v1 += (s(i, 1) - m1) * (s(i, 1) - m1);
    }
    return c / std::sqrt(v0 * v1);
}

}  // namespace

TEST(StudentT, ClosedForms) {
    for (double nu : {0.5, 1.0, 3.0, 30.0}) EXPECT_EQ(student_t_cdf(0.0, nu), 0.5);
    EXPECT_NEAR(student_t_cdf(1.0, 1.0), 0.75, 1e-15);
    EXPECT_NEAR(student_t_cdf(std::sqrt(2.0), 2.0), 0.853553390593274, 1e-14);
    for (double z : {-30.0, -2.5, -0.3, 0.7, 4.0, 100.0}) {
        EXPECT_NEAR(student_t_cdf(z, 1.0), 0.5 + std::atan(z) / std::numbers::pi, 1e-14) << z;
        EXPECT_NEAR(student_t_cdf(z, 2.0), 0.5 + z / (2 * std::sqrt(2 + z * z)), 1e-14) << z;
    }
    EXPECT_NEAR(student_t_cdf(1.3, 4.0) + student_t_cdf(-1.3, 4.0), 1.0, 1e-15);
}

TEST(StudentT, UpperQuantileInvertsCdf) {
    for (double nu : {1.0, 2.0, 4.0, 6.0}) {
        for (double p : {0.5, 0.1, 1e-3, 2.5e-3}) {
            EXPECT_NEAR(1.0 - student_t_cdf(student_t_upper_quantile(p, nu), nu), p, 1e-12 + 1e-9 * p);
        }
    }
    EXPECT_THROW(student_t_upper_quantile(0.0, 2.0), std::invalid_argument);
}

TEST(Dgp, CatalogueAndNames) {
    EXPECT_EQ(dgp_names().size(), 8u);
    for (const auto& n : dgp_names()) {
        const auto spec = dgp_from_name(n);
        EXPECT_EQ(spec.name, n);
        EXPECT_NO_THROW(spec.validate());
    }
    EXPECT_EQ(dgp_from_name("t4").df, 4.0);
    EXPECT_EQ(dgp_from_name("t4").theta, 0.5);
    EXPECT_EQ(dgp_from_name("cauchy").theta, 0.0);
    EXPECT_NEAR(dgp_from_name("logistic").s, 1.0 / 3.0, 1e-16);
    try {
        dgp_from_name("gumbel");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("archimax-mixed"), std::string::npos);
    }
    EXPECT_THROW(DgpSpec::t_copula("x", 2.0, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(DgpSpec::symmetric_logistic("x", 1.5).validate(), std::invalid_argument);
    EXPECT_THROW(DgpSpec::bpii("x", 0.0).validate(), std::invalid_argument);
}

TEST(TrueStdf, TableValues) {
    EXPECT_NEAR(true_stdf(dgp_from_name("archimax-logistic"), {1, 1}), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(true_stdf(dgp_from_name("archimax-mixed"), {1, 1}), 1.5, 1e-15);
    EXPECT_NEAR(true_stdf(dgp_from_name("bpii3"), {1, 1}), 1.875, 1e-14);
    EXPECT_NEAR(true_stdf(dgp_from_name("cauchy"), {1, 1}), 1 + 1 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(true_stdf(DgpSpec::symmetric_logistic("s1", 1.0), {0.3, 0.4}), 0.7, 1e-15);
}

TEST(TrueStdf, BoundaryBoundsHomogeneity) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (const auto& name : dgp_names()) {
        const auto spec = dgp_from_name(name);
        EXPECT_EQ(true_stdf(spec, {0.7, 0}), 0.7);
        EXPECT_EQ(true_stdf(spec, {0, 1.3}), 1.3);
        EXPECT_EQ(true_stdf(spec, {0, 0}), 0.0);
        for (int t = 0; t < 100; ++t) {
            const Point x{u(rng) + 1e-3, u(rng) + 1e-3};
            const double v = true_stdf(spec, x);
            EXPECT_GE(v, x.max_coord() - 1e-15) << name;
            EXPECT_LE(v, x.sum() + 1e-15) << name;
            for (double a : {0.5, 2.0}) {
                EXPECT_NEAR(true_stdf(spec, x.scaled(a)), a * v, 1e-12 * a * v) << name;
            }
        }
    }
}

TEST(Sampler, Reproducible) {
    for (const auto& name : dgp_names()) {
        const auto spec = dgp_from_name(name);
        const RngStream s{7, dgp_index(name), 3};
        const auto a = sample_dgp(spec, 200, s), b = sample_dgp(spec, 200, s);
        EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin())) << name;
        const auto c = sample_dgp(spec, 200, RngStream{7, dgp_index(name), 4});
        EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin())) << name;
    }
}

TEST(Sampler, TCopulaKendallTauAndMargins) {
    const auto s = sample_dgp(dgp_from_name("t4"), 20000, RngStream{1, 2, 0});
    EXPECT_NEAR(kendall_tau(s), 2 / std::numbers::pi * std::asin(0.5), 0.02);
    EXPECT_LT(ks_uniform(s, 0), 0.02);
    EXPECT_LT(ks_uniform(s, 1), 0.02);
}

TEST(Sampler, CopulaScaleMargins) {
    for (const char* name : {"cauchy", "logistic", "archimax-logistic", "archimax-mixed"}) {
        const auto s = sample_dgp(dgp_from_name(name), 20000, RngStream{2, dgp_index(name), 0});
        EXPECT_LT(ks_uniform(s, 0), 0.02) << name;
        EXPECT_LT(ks_uniform(s, 1), 0.02) << name;
    }
}

TEST(Sampler, LogisticBoundaryIsIndependent) {
    const auto s = sample_dgp(DgpSpec::symmetric_logistic("indep", 1.0), 20000, RngStream{3, 0, 0});
    EXPECT_NEAR(correlation(s), 0.0, 0.03);
}

TEST(Sampler, BpiiOnParetoScale) {
    const auto s = sample_dgp(dgp_from_name("bpii3"), 20000, RngStream{4, 4, 0});
    // P(X > 1) = 2^{-3}
    std::size_t above = 0;
    for (std::size_t i = 0; i < s.n(); ++i) above += s(i, 0) > 1.0;
    EXPECT_NEAR(above / 20000.0, 0.125, 0.01);
}

TEST(Sampler, EmpiricalStdfNearFiniteLevelProbability) {
    // compared at the same tail fraction k/n = 1/t, so second-order bias
    // (large for t6) cancels
    const std::vector<Point> xs{{0.5, 0.5}};
    for (const auto& name : dgp_names()) {
        const auto spec = dgp_from_name(name);
        const auto s = sample_dgp(spec, 50000, RngStream{5, dgp_index(name), 0});
        const double est = empirical_stdf(compute_ranks(s), 2000, xs[0]);
        const auto o = mc_stdf_oracle(spec, xs, 25, 1000000, RngStream{5, dgp_index(name), 1});
        EXPECT_NEAR(est, o[0].value, 0.05) << name;
    }
}

TEST(Oracle, IndependenceAndComonotoneMocks) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const CopulaSampler indep = [&](std::mt19937_64& g) { return std::array<double, 2>{u(g), u(g)}; };
    const auto o = mc_stdf_oracle(indep, {1, 1}, 100, 1000000, rng);
    EXPECT_NEAR(o.value, 1.99, 4 * o.standard_error);
    EXPECT_GT(o.standard_error, 0.0);
    const CopulaSampler como = [&](std::mt19937_64& g) {
        const double v = u(g);
        return std::array<double, 2>{v, v};
    };
    const auto c = mc_stdf_oracle(como, {1, 1}, 100, 1000000, rng);
    EXPECT_NEAR(c.value, 1.0, 4 * c.standard_error);
}

TEST(Oracle, ArchimaxLogisticMatchesTable) {
    const auto spec = dgp_from_name("archimax-logistic");
    const std::vector<Point> xs{{1, 1}};
    const auto o = mc_stdf_oracle(spec, xs, 200, 2000000, RngStream{8, 6, 0});
    EXPECT_NEAR(o[0].value, std::sqrt(2.0), 3 * o[0].standard_error);
}

TEST(Oracle, ModelOracleMatchesCopulaSampler) {
    // the raw-threshold oracle and the copula-scale oracle estimate the same
    // probability; same draws give identical hit counts
    const auto spec = dgp_from_name("t4");
    const std::vector<Point> xs{{0.3, 0.7}};
    const RngStream stream{9, 2, 0};
    const auto fast = mc_stdf_oracle(spec, xs, 50, 200000, stream);
    auto rng = stream.engine();
    const Sample s = sample_dgp(spec, 200000, stream);
    std::size_t drawn = 0;
    const CopulaSampler from_samples = [&](std::mt19937_64&) {
        const std::array<double, 2> out{s(drawn, 0), s(drawn, 1)};
        ++drawn;
        return out;
    };
    const auto slow = mc_stdf_oracle(from_samples, xs[0], 50, 200000, rng);
    EXPECT_NEAR(fast[0].value, slow.value, 50.0 * 2 / 200000 + 1e-12);
}
