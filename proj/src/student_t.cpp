#include "stdf/student_t.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <stdexcept>

namespace stdf {

double student_t_cdf(double z, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("student t: degrees of freedom must be positive");
    if (z == 0.0) return 0.5;
    if (std::isinf(z)) return z > 0.0 ? 1.0 : 0.0;
    const double z2 = z * z;
    // tail = P(T > |z|); use the complementary argument when z^2 dominates nu
    double tail;
    if (nu < z2) {
        tail = 0.5 * boost::math::ibeta(0.5 * nu, 0.5, nu / (nu + z2));
    } else {
        tail = 0.5 * boost::math::ibetac(0.5, 0.5 * nu, z2 / (nu + z2));
    }
    return z > 0.0 ? 1.0 - tail : tail;
}

double student_t_upper_quantile(double p, double nu) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("student t quantile: p must lie in (0, 1)");
    const boost::math::students_t_distribution<double> dist(nu);
    return boost::math::quantile(boost::math::complement(dist, p));
}

}  // namespace stdf
