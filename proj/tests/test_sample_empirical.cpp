#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "stdf/empirical.hpp"
#include "stdf/sample.hpp"

using namespace stdf;

namespace {

Sample antimonotone() { return Sample::from_rows({{1, 4}, {2, 3}, {3, 2}, {4, 1}}); }

}  // namespace

TEST(Point, RejectsNegativeAndNonFinite) {
    EXPECT_THROW(Point({1.0, -0.1}), std::invalid_argument);
    EXPECT_THROW(Point({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    EXPECT_NO_THROW(Point({0.0, 0.0}));
}

TEST(Sample, Validates) {
    EXPECT_THROW(Sample(0, 2, {}), std::invalid_argument);
    EXPECT_THROW(Sample(2, 1, {1, 2}), std::invalid_argument);
    EXPECT_THROW(Sample(2, 2, {1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(Sample(1, 2, {1, std::numeric_limits<double>::infinity()}), std::invalid_argument);
    EXPECT_THROW(Sample::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST(Ranks, DistinctColumn) {
    const auto r = compute_ranks(Sample::from_rows({{4, 0}, {1, 1}, {3, 2}, {2, 3}}));
    EXPECT_EQ(r.rank(0, 0), 4);
    EXPECT_EQ(r.rank(1, 0), 1);
    EXPECT_EQ(r.rank(2, 0), 3);
    EXPECT_EQ(r.rank(3, 0), 2);
}

TEST(Ranks, TiesGoToFirstOccurrence) {
    const auto r = compute_ranks(Sample::from_rows({{5, 1}, {5, 2}}));
    EXPECT_EQ(r.rank(0, 0), 1);
    EXPECT_EQ(r.rank(1, 0), 2);
}

TEST(Ranks, AntimonotoneToy) {
    const auto r = compute_ranks(antimonotone());
    const int expected[4][2] = {{1, 4}, {2, 3}, {3, 2}, {4, 1}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) EXPECT_EQ(r.rank(i, j), expected[i][j]);
    }
    EXPECT_EQ(r.tail_rank(0, 0), 4);
    EXPECT_EQ(r.tail_rank(3, 0), 1);
}

TEST(EmpiricalStdf, HandExample) {
    const auto r = compute_ranks(antimonotone());
    EXPECT_DOUBLE_EQ(empirical_stdf(r, 2, {1, 1}), 2.0);
    EXPECT_DOUBLE_EQ(empirical_stdf_at_level(r, 2, 1, {1, 1}), 2.0);
}

TEST(EmpiricalStdf, MarginalPointIsOne) {
    std::mt19937_64 rng(3);
    const auto s = oracle::random_sample(rng, 40, 2);
    const auto r = compute_ranks(s);
    for (int k = 1; k <= 40; ++k) EXPECT_DOUBLE_EQ(empirical_stdf(r, k, {1, 0}), 1.0) << k;
}

TEST(EmpiricalStdf, OriginAndEmptyThresholds) {
    const auto r = compute_ranks(antimonotone());
    EXPECT_EQ(empirical_stdf(r, 3, {0, 0}), 0.0);
    // level 0.5: floor(0.5) = 0 in both coordinates
    std::mt19937_64 rng(1);
    const auto big = compute_ranks(oracle::random_sample(rng, 1000, 2));
    EXPECT_EQ(empirical_stdf_at_level(big, 1000, 0.0005, {1, 1}), 0.0);
}

TEST(EmpiricalStdf, LevelIsProduct) {
    std::mt19937_64 rng(2);
    const auto r = compute_ranks(oracle::random_sample(rng, 1000, 2));
    const Point x{0.3, 0.7};
    EXPECT_EQ(empirical_stdf_at_level(r, 1000, 0.4, x), empirical_stdf(r, 400, x));
}

TEST(EmpiricalStdf, ThresholdPolicies) {
    const auto r = compute_ranks(antimonotone());
    EXPECT_THROW(empirical_stdf(r, 5, {1, 0.1}), std::out_of_range);
    EXPECT_THROW(empirical_stdf(r, 5, {0.1, 1}), std::out_of_range);
    EXPECT_THROW(empirical_stdf(r, 0, {1, 1}), std::invalid_argument);
    EXPECT_THROW(empirical_stdf(r, 2, {1, 1, 1}), std::invalid_argument);
    // saturating: every row exceeds, estimate n / k
    EXPECT_DOUBLE_EQ(empirical_stdf(r, 5, {1, 0.1}, ThresholdPolicy::saturate), 4.0 / 5.0);
    EXPECT_DOUBLE_EQ(empirical_stdf(r, 5, {0, 1}, ThresholdPolicy::saturate), 4.0 / 5.0);
}

TEST(EmpiricalStdf, NonIntegerLevel) {
    const auto r = compute_ranks(antimonotone());
    // k = 2.5: floor(2.5) = 2 per coordinate, rows {3,4} and {1,2} exceed
    EXPECT_DOUBLE_EQ(empirical_stdf(r, 2.5, {1, 1}), 4 / 2.5);
    EXPECT_DOUBLE_EQ(empirical_stdf(r, 2.5, {0.5, 0}), 1 / 2.5);
}

TEST(EmpiricalStdf, MatchesSortingOracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 49;
        const std::size_t d = 2 + rng() % 2;
        const auto s = oracle::random_sample(rng, n, d);
        const auto r = compute_ranks(s);
        const int k = 1 + static_cast<int>(rng() % n);
        std::vector<double> xs(d);
        for (auto& v : xs) v = u(rng);
        const Point x(xs);
        ASSERT_EQ(empirical_stdf(r, k, x), oracle::empirical_stdf(s, k, x)) << "trial " << trial;
    }
}

TEST(EmpiricalStdf, RankInvariance) {
    std::mt19937_64 rng(5);
    const auto s = oracle::random_sample(rng, 200, 3);
    std::vector<double> v(s.values().begin(), s.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = i % 3 == 0 ? std::exp(5 * v[i]) : (i % 3 == 1 ? -1.0 / v[i] : v[i] * v[i] * v[i]);
    }
    const auto r1 = compute_ranks(s), r2 = compute_ranks(Sample(200, 3, v));
    for (double k : {7.0, 33.3, 150.0}) {
        const Point x{0.4, 1.0, 0.2};
        EXPECT_EQ(empirical_stdf(r1, k, x), empirical_stdf(r2, k, x));
    }
}

TEST(EmpiricalStdf, MonotoneAndBounded) {
    std::mt19937_64 rng(8);
    const auto r = compute_ranks(oracle::random_sample(rng, 300, 2));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double k = 1 + 150 * u(rng);
        const Point x{u(rng), u(rng)};
        const Point bigger{x[0] + 0.3 * u(rng), x[1]};
        const double v = empirical_stdf(r, k, x);
        EXPECT_LE(v, empirical_stdf(r, k, bigger));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, (std::floor(k * x[0]) + std::floor(k * x[1])) / k + 1e-15);
        EXPECT_LE(v, x.sum() + 1e-15);
    }
}

TEST(Clamp, Examples) {
    EXPECT_DOUBLE_EQ(clamp_stdf({0.5, 0.5}, 1.7), 1.0);
    EXPECT_DOUBLE_EQ(clamp_stdf({0.5, 0.5}, 0.2), 0.5);
    EXPECT_DOUBLE_EQ(clamp_stdf({0.3, 0.7}, 0.9), 0.9);
    for (double v : {-1.0, 0.2, 0.8, 5.0}) {
        const Point x{0.3, 0.7};
        EXPECT_EQ(clamp_stdf(x, clamp_stdf(x, v)), clamp_stdf(x, v));
    }
}

TEST(Median, OddEvenEmpty) {
    EXPECT_DOUBLE_EQ(median({1.6, 1.0, 1.2}), 1.2);
    EXPECT_DOUBLE_EQ(median({1.0, 2.0, 1.2, 1.4}), 1.3);
    EXPECT_THROW(median({}), std::invalid_argument);
}
