#include "stdf/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stdf {

namespace {

void check_coords(const std::vector<double>& c) {
    for (double v : c) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("point coordinates must be finite and nonnegative");
        }
    }
}

}  // namespace

Point::Point(std::initializer_list<double> coords) : coords_(coords) { check_coords(coords_); }

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_coords(coords_); }

Point Point::scaled(double a) const {
    std::vector<double> c(coords_);
    for (double& v : c) v *= a;
    return Point(std::move(c));
}

double Point::max_coord() const noexcept {
    return coords_.empty() ? 0.0 : *std::max_element(coords_.begin(), coords_.end());
}

double Point::sum() const noexcept { return std::accumulate(coords_.begin(), coords_.end(), 0.0); }

Sample::Sample(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n_ < 1) throw std::invalid_argument("sample needs at least one observation");
    if (d_ < 2) throw std::invalid_argument("sample needs dimension d >= 2");
    if (values_.size() != n_ * d_) throw std::invalid_argument("sample value count does not match n*d");
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        if (!std::isfinite(values_[idx])) {
            throw std::invalid_argument("non-finite sample entry at row " + std::to_string(idx / d_ + 1) +
                                        ", column " + std::to_string(idx % d_ + 1));
        }
    }
}

Sample Sample::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("sample needs at least one observation");
    const std::size_t d = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * d);
    for (const auto& row : rows) {
        if (row.size() != d) throw std::invalid_argument("ragged sample rows");
        values.insert(values.end(), row.begin(), row.end());
    }
    return Sample(rows.size(), d, std::move(values));
}

RankMatrix::RankMatrix(std::size_t n, std::size_t d, std::vector<std::int32_t> ranks)
    : n_(n), d_(d), ranks_(std::move(ranks)) {
    if (ranks_.size() != n_ * d_) throw std::invalid_argument("rank count does not match n*d");
    tail_.resize(ranks_.size());
    for (std::size_t idx = 0; idx < ranks_.size(); ++idx) {
        tail_[idx] = static_cast<std::int32_t>(n_) + 1 - ranks_[idx];
    }
}

RankMatrix compute_ranks(const Sample& sample) {
    const std::size_t n = sample.n();
    const std::size_t d = sample.d();
    std::vector<std::int32_t> ranks(n * d);
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // stable: equal values keep row order, so the first occurrence ranks lower
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return sample(a, j) < sample(b, j); });
        for (std::size_t pos = 0; pos < n; ++pos) {
            ranks[order[pos] * d + j] = static_cast<std::int32_t>(pos + 1);
        }
    }
    return RankMatrix(n, d, std::move(ranks));
}

}  // namespace stdf
