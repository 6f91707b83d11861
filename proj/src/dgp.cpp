#include "stdf/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "stdf/student_t.hpp"

namespace stdf {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform on the open interval (0, 1) with 53 random bits.
double open_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double unit_exponential(std::mt19937_64& rng) { return -std::log(open_uniform(rng)); }

// Positive stable variable with Laplace transform exp(-t^alpha), 0 < alpha <= 1
// (Kanter's representation).
double positive_stable(double alpha, std::mt19937_64& rng) {
    if (alpha == 1.0) return 1.0;
    const double u = std::numbers::pi * open_uniform(rng);
    const double e = unit_exponential(rng);
    return std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
           std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
}

double archimax_ell(ArchimaxGenerator g, double p, double q) {
    switch (g) {
        case ArchimaxGenerator::logistic:
            return std::hypot(p, q);
        case ArchimaxGenerator::mixed:
            return p + q == 0.0 ? 0.0 : (p * p + q * q + p * q) / (p + q);
    }
    return 0.0;
}

double archimax_ell_d1(ArchimaxGenerator g, double p, double q) {
    switch (g) {
        case ArchimaxGenerator::logistic:
            return p / std::hypot(p, q);
        case ArchimaxGenerator::mixed:
            return (p * p + 2.0 * p * q) / ((p + q) * (p + q));
    }
    return 0.0;
}

// Conditional CDF P(V <= v | U = u) of C(u,v) = phi^{-1}(ell(phi(u), phi(v)))
// with the Clayton generator phi(t) = 1/t - 1.
double archimax_conditional(ArchimaxGenerator g, double u, double v) {
    const double p = 1.0 / u - 1.0;
    const double q = 1.0 / v - 1.0;
    const double ell = archimax_ell(g, p, q);
    const double ratio = (1.0 + p) / (1.0 + ell);
    return archimax_ell_d1(g, p, q) * ratio * ratio;
}

double archimax_inverse_conditional(ArchimaxGenerator g, double u, double w) {
    double lo = 0.0;
    double hi = 1.0;
    // 52 halvings shrink the bracket below 1e-15
    for (int iter = 0; iter < 52; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (archimax_conditional(g, u, mid) < w) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Draws on a model-specific scale on which large values are upper-tail events.
class RawModel {
public:
    explicit RawModel(const DgpSpec& spec)
        : spec_(spec),
          chi2_(spec.family == DgpFamily::t_copula ? spec.df : 1.0),
          gamma_(spec.family == DgpFamily::bpii ? spec.beta : 1.0, 1.0) {}

    std::array<double, 2> draw(std::mt19937_64& rng) {
        switch (spec_.family) {
            case DgpFamily::t_copula: {
                const double z1 = normal_(rng);
                const double z2 = spec_.theta * z1 + std::sqrt(1.0 - spec_.theta * spec_.theta) * normal_(rng);
                const double scale = std::sqrt(chi2_(rng) / spec_.df);
                return {z1 / scale, z2 / scale};
            }
            case DgpFamily::bpii: {
                const double z = gamma_(rng);
                return {unit_exponential(rng) / z, unit_exponential(rng) / z};
            }
            case DgpFamily::symmetric_logistic: {
                // U_j = exp(-(E_j / S)^s); stored as -(E_j / S)^s
                const double stable = positive_stable(spec_.s, rng);
                return {-std::pow(unit_exponential(rng) / stable, spec_.s),
                        -std::pow(unit_exponential(rng) / stable, spec_.s)};
            }
            case DgpFamily::archimax: {
                const double u = open_uniform(rng);
                const double w = open_uniform(rng);
                return {u, archimax_inverse_conditional(spec_.generator, u, w)};
            }
        }
        return {0.0, 0.0};
    }

    double emitted(double raw) const {
        switch (spec_.family) {
            case DgpFamily::t_copula:
                return student_t_cdf(raw, spec_.df);
            case DgpFamily::symmetric_logistic:
                return std::exp(raw);
            case DgpFamily::bpii:
            case DgpFamily::archimax:
                return raw;
        }
        return raw;
    }

    /// Raw-scale value exceeded with marginal probability p.
    double upper_threshold(double p) const {
        switch (spec_.family) {
            case DgpFamily::t_copula:
                return student_t_upper_quantile(p, spec_.df);
            case DgpFamily::bpii:
                return std::pow(p, -1.0 / spec_.beta) - 1.0;
            case DgpFamily::symmetric_logistic:
                return std::log1p(-p);
            case DgpFamily::archimax:
                return 1.0 - p;
        }
        return 0.0;
    }

private:
    const DgpSpec& spec_;
    std::normal_distribution<double> normal_;
    std::chi_squared_distribution<double> chi2_;
    std::gamma_distribution<double> gamma_;
};

double t_copula_stdf(double nu, double theta, double x1, double x2) {
    if (x1 == 0.0) return x2;
    if (x2 == 0.0) return x1;
    const double c = std::sqrt(nu + 1.0) / std::sqrt(1.0 - theta * theta);
    return x1 * student_t_cdf(c * (std::pow(x1 / x2, 1.0 / nu) - theta), nu + 1.0) +
           x2 * student_t_cdf(c * (std::pow(x2 / x1, 1.0 / nu) - theta), nu + 1.0);
}

}  // namespace

DgpSpec DgpSpec::t_copula(std::string name, double df, double theta) {
    DgpSpec s;
    s.name = std::move(name);
    s.family = DgpFamily::t_copula;
    s.df = df;
    s.theta = theta;
    return s;
}

DgpSpec DgpSpec::bpii(std::string name, double beta) {
    DgpSpec s;
    s.name = std::move(name);
    s.family = DgpFamily::bpii;
    s.beta = beta;
    return s;
}

DgpSpec DgpSpec::symmetric_logistic(std::string name, double dep) {
    DgpSpec s;
    s.name = std::move(name);
    s.family = DgpFamily::symmetric_logistic;
    s.s = dep;
    return s;
}

DgpSpec DgpSpec::archimax(std::string name, ArchimaxGenerator generator) {
    DgpSpec s;
    s.name = std::move(name);
    s.family = DgpFamily::archimax;
    s.generator = generator;
    return s;
}

void DgpSpec::validate() const {
    switch (family) {
        case DgpFamily::t_copula:
            if (!(df > 0.0)) throw std::invalid_argument("t-copula: degrees of freedom must be positive");
            if (!(theta > -1.0 && theta < 1.0)) throw std::invalid_argument("t-copula: correlation outside (-1, 1)");
            break;
        case DgpFamily::bpii:
            if (!(beta > 0.0)) throw std::invalid_argument("bpii: beta must be positive");
            break;
        case DgpFamily::symmetric_logistic:
            if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("logistic: s must lie in (0, 1]");
            break;
        case DgpFamily::archimax:
            break;
    }
}

const std::vector<std::string>& dgp_names() {
    static const std::vector<std::string> names{"cauchy", "t2",       "t4",
                                                "t6",     "bpii3",    "logistic",
                                                "archimax-logistic", "archimax-mixed"};
    return names;
}

DgpSpec dgp_from_name(std::string_view name) {
    if (name == "cauchy") return DgpSpec::t_copula("cauchy", 1.0, 0.0);
    if (name == "t2") return DgpSpec::t_copula("t2", 2.0, 0.5);
    if (name == "t4") return DgpSpec::t_copula("t4", 4.0, 0.5);
    if (name == "t6") return DgpSpec::t_copula("t6", 6.0, 0.5);
    if (name == "bpii3") return DgpSpec::bpii("bpii3", 3.0);
    if (name == "logistic") return DgpSpec::symmetric_logistic("logistic", 1.0 / 3.0);
    if (name == "archimax-logistic") return DgpSpec::archimax("archimax-logistic", ArchimaxGenerator::logistic);
    if (name == "archimax-mixed") return DgpSpec::archimax("archimax-mixed", ArchimaxGenerator::mixed);
    std::string msg = "unknown DGP '" + std::string(name) + "'; valid names:";
    for (const auto& n : dgp_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

std::uint32_t dgp_index(std::string_view name) {
    const auto& names = dgp_names();
    return static_cast<std::uint32_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

std::mt19937_64 RngStream::engine() const {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(dgp) + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ replication);
    return std::mt19937_64(h);
}

Sample sample_dgp(const DgpSpec& spec, std::size_t n, const RngStream& stream) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    auto rng = stream.engine();
    RawModel model(spec);
    std::vector<double> values(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto raw = model.draw(rng);
        values[2 * i] = model.emitted(raw[0]);
        values[2 * i + 1] = model.emitted(raw[1]);
    }
    return Sample(n, 2, std::move(values));
}

double true_stdf(const DgpSpec& spec, const Point& x) {
    spec.validate();
    if (x.dim() != 2) throw std::invalid_argument("true stdf is defined for bivariate points");
    const double x1 = x[0];
    const double x2 = x[1];
    if (x1 == 0.0 || x2 == 0.0) return x1 + x2;
    switch (spec.family) {
        case DgpFamily::t_copula:
            return t_copula_stdf(spec.df, spec.theta, x1, x2);
        case DgpFamily::bpii:
            return x1 + x2 - std::pow(std::pow(x1, -1.0 / spec.beta) + std::pow(x2, -1.0 / spec.beta), -spec.beta);
        case DgpFamily::symmetric_logistic:
            return std::pow(std::pow(x1, 1.0 / spec.s) + std::pow(x2, 1.0 / spec.s), spec.s);
        case DgpFamily::archimax:
            return archimax_ell(spec.generator, x1, x2);
    }
    return 0.0;
}

OracleEstimate mc_stdf_oracle(const CopulaSampler& sampler, const Point& x, double t, std::size_t m,
                              std::mt19937_64& rng) {
    if (x.dim() != 2) throw std::invalid_argument("oracle is bivariate");
    if (!(t > 0.0) || m == 0) throw std::invalid_argument("oracle needs t > 0 and m > 0");
    const double c1 = 1.0 - x[0] / t;
    const double c2 = 1.0 - x[1] / t;
    const bool use1 = x[0] > 0.0;
    const bool use2 = x[1] > 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto u = sampler(rng);
        hits += (use1 && u[0] > c1) || (use2 && u[1] > c2);
    }
    const double p = static_cast<double>(hits) / static_cast<double>(m);
    return {t * p, t * std::sqrt(p * (1.0 - p) / static_cast<double>(m))};
}

std::vector<OracleEstimate> mc_stdf_oracle(const DgpSpec& spec, std::span<const Point> xs, double t,
                                           std::size_t m, const RngStream& stream) {
    spec.validate();
    if (!(t > 0.0) || m == 0) throw std::invalid_argument("oracle needs t > 0 and m > 0");
    RawModel model(spec);
    constexpr double kNever = std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 2>> thresholds;
    for (const Point& x : xs) {
        if (x.dim() != 2) throw std::invalid_argument("oracle is bivariate");
        if (x[0] >= t || x[1] >= t) throw std::invalid_argument("oracle needs x_j < t");
        thresholds.push_back({x[0] > 0.0 ? model.upper_threshold(x[0] / t) : kNever,
                              x[1] > 0.0 ? model.upper_threshold(x[1] / t) : kNever});
    }
    std::vector<std::size_t> hits(xs.size(), 0);
    auto rng = stream.engine();
    for (std::size_t i = 0; i < m; ++i) {
        const auto raw = model.draw(rng);
        for (std::size_t p = 0; p < xs.size(); ++p) {
            hits[p] += raw[0] > thresholds[p][0] || raw[1] > thresholds[p][1];
        }
    }
    std::vector<OracleEstimate> out;
    for (std::size_t hit : hits) {
        const double p = static_cast<double>(hit) / static_cast<double>(m);
        out.push_back({t * p, t * std::sqrt(p * (1.0 - p) / static_cast<double>(m))});
    }
    return out;
}

}  // namespace stdf
