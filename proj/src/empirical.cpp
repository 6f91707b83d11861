#include "stdf/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stdf {

double empirical_stdf(const RankMatrix& ranks, double k, const Point& x, ThresholdPolicy policy) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("level k must be positive and finite");
    const std::size_t d = ranks.d();
    if (x.dim() != d) throw std::invalid_argument("point dimension does not match sample dimension");
    const auto n = static_cast<std::int64_t>(ranks.n());

    // thresholds c_j = floor(k x_j); row i exceeds in column j iff tail_rank <= c_j
    std::vector<std::int32_t> c(d);
    bool any_positive = false;
    for (std::size_t j = 0; j < d; ++j) {
        const double t = std::floor(k * x[j]);
        if (t > static_cast<double>(n)) {
            if (policy == ThresholdPolicy::strict) {
                throw std::out_of_range("threshold index floor(k*x_" + std::to_string(j + 1) + ") = " +
                                        std::to_string(t) + " exceeds sample size " + std::to_string(n));
            }
            c[j] = static_cast<std::int32_t>(n);
        } else {
            c[j] = static_cast<std::int32_t>(t);
        }
        if (c[j] > 0) any_positive = true;
    }
    if (!any_positive) return 0.0;
    if (std::find(c.begin(), c.end(), static_cast<std::int32_t>(n)) != c.end()) {
        return static_cast<double>(n) / k;
    }

    const auto tail = ranks.tail_ranks();
    std::int64_t count = 0;
    if (d == 2) {
        const std::int32_t c0 = c[0];
        const std::int32_t c1 = c[1];
        for (std::size_t idx = 0; idx < tail.size(); idx += 2) {
            count += (tail[idx] <= c0) | (tail[idx + 1] <= c1);
        }
    } else {
        for (std::size_t idx = 0; idx < tail.size(); idx += d) {
            for (std::size_t j = 0; j < d; ++j) {
                if (tail[idx + j] <= c[j]) {
                    ++count;
                    break;
                }
            }
        }
    }
    return static_cast<double>(count) / k;
}

double empirical_stdf_at_level(const RankMatrix& ranks, double k, double a, const Point& x,
                               ThresholdPolicy policy) {
    return empirical_stdf(ranks, k * a, x, policy);
}

LevelFunction make_level_function(const RankMatrix& ranks, ThresholdPolicy policy) {
    return [&ranks, policy](double level, const Point& x) { return empirical_stdf(ranks, level, x, policy); };
}

double clamp_stdf(const Point& x, double v) noexcept {
    return std::min(x.sum(), std::max(x.max_coord(), v));
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    const std::size_t m = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), values.end());
    const double upper = values[m];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m));
    return 0.5 * (lower + upper);
}

}  // namespace stdf
