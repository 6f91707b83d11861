#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace stdf {

/// A point x = (x_1, ..., x_d) in the nonnegative orthant at which a
/// tail dependence function is evaluated.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords);
    explicit Point(std::vector<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t j) const { return coords_[j]; }
    std::span<const double> coords() const noexcept { return coords_; }

    /// a * x, coordinate-wise.
    Point scaled(double a) const;
    double max_coord() const noexcept;
    double sum() const noexcept;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// n observations of a d-dimensional random vector, stored row-major.
class Sample {
public:
    /// Throws std::invalid_argument unless n >= 1, d >= 2, values.size() == n*d
    /// and every entry is finite.
    Sample(std::size_t n, std::size_t d, std::vector<double> values);

    static Sample from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * d_ + j]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> values_;
};

/// Per-column ranks of a Sample. Each column is a permutation of 1..n;
/// ties are broken by row index (earlier rows get the lower rank).
class RankMatrix {
public:
    RankMatrix(std::size_t n, std::size_t d, std::vector<std::int32_t> ranks);

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return d_; }
    std::int32_t rank(std::size_t i, std::size_t j) const { return ranks_[i * d_ + j]; }

    /// n + 1 - rank: 1 for the column maximum, n for the minimum. Row i
    /// exceeds the threshold X_{n-c+1,n} in column j iff tail_rank <= c.
    std::int32_t tail_rank(std::size_t i, std::size_t j) const {
        return static_cast<std::int32_t>(n_) + 1 - ranks_[i * d_ + j];
    }
    std::span<const std::int32_t> tail_ranks() const noexcept { return tail_; }

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<std::int32_t> ranks_;
    std::vector<std::int32_t> tail_;
};

RankMatrix compute_ranks(const Sample& sample);

}  // namespace stdf
