#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stdf/sample.hpp"

namespace stdf {

enum class DgpFamily { t_copula, bpii, symmetric_logistic, archimax };

/// Tail-dependence function used as the Archimax model's stdf.
enum class ArchimaxGenerator {
    logistic,  ///< (x^2 + y^2)^{1/2}
    mixed,     ///< (x^2 + y^2 + xy) / (x + y)
};

/// A bivariate data-generating process and its parameters. Only the
/// parameters of `family` are meaningful.
struct DgpSpec {
    std::string name;
    DgpFamily family = DgpFamily::t_copula;
    double df = 1.0;     ///< t_copula: degrees of freedom nu > 0
    double theta = 0.0;  ///< t_copula: correlation in (-1, 1)
    double beta = 3.0;   ///< bpii: shape > 0
    double s = 1.0;      ///< symmetric_logistic: dependence in (0, 1]
    ArchimaxGenerator generator = ArchimaxGenerator::logistic;

    static DgpSpec t_copula(std::string name, double df, double theta);
    static DgpSpec bpii(std::string name, double beta);
    static DgpSpec symmetric_logistic(std::string name, double s);
    static DgpSpec archimax(std::string name, ArchimaxGenerator generator);

    void validate() const;
};

/// cauchy, t2, t4, t6, bpii3, logistic, archimax-logistic, archimax-mixed.
const std::vector<std::string>& dgp_names();

/// Throws std::invalid_argument listing the valid names on an unknown name.
DgpSpec dgp_from_name(std::string_view name);

/// Position of `name` in dgp_names(), or dgp_names().size() if absent.
std::uint32_t dgp_index(std::string_view name);

/// Identifies an independent random stream. Identical streams reproduce
/// identical draws bit for bit.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint32_t dgp = 0;
    std::uint64_t replication = 0;

    std::mt19937_64 engine() const;
};

/// n i.i.d. bivariate draws. t-copula, logistic and Archimax models are
/// emitted on the copula (uniform) scale; BPII on its Pareto scale.
Sample sample_dgp(const DgpSpec& spec, std::size_t n, const RngStream& stream);

/// Closed-form stdf of the model's upper tail at a bivariate point.
double true_stdf(const DgpSpec& spec, const Point& x);

struct OracleEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Draws one pair on the copula scale.
using CopulaSampler = std::function<std::array<double, 2>(std::mt19937_64&)>;

/// Monte Carlo estimate of t * P(U_1 > 1 - x_1/t or U_2 > 1 - x_2/t) from m
/// draws: the finite-t version of the limit that defines the stdf.
OracleEstimate mc_stdf_oracle(const CopulaSampler& sampler, const Point& x, double t, std::size_t m,
                              std::mt19937_64& rng);

/// Same estimate for a model, sharing one set of m draws across all points.
std::vector<OracleEstimate> mc_stdf_oracle(const DgpSpec& spec, std::span<const Point> xs, double t,
                                           std::size_t m, const RngStream& stream);

}  // namespace stdf
