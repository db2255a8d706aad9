#include "lagvar/special.hpp"

#include <cmath>
#include <stdexcept>

namespace lagvar {

double laguerre_poly(unsigned k, double a, double x) {
    if (k == 0) return 1.0;
    double lm1 = 1.0;           // L_0
    double l = a + 1.0 - x;     // L_1
    for (unsigned j = 1; j < k; ++j) {
        double lp1 = ((2.0 * j + a + 1.0 - x) * l - (j + a) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double laguerre_poly_normalized(unsigned k, double a, double x) {
    double lognorm = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(a + 1.0)
                            - std::lgamma(k + a + 1.0));
    return std::exp(lognorm) * laguerre_poly(k, a, x);
}

double laguerre_poly_deriv(unsigned k, double a, double x) {
    if (k == 0) return 0.0;
    return -laguerre_poly(k - 1, a + 1.0, x);
}

double hermite_poly(unsigned m, double x) {
    if (m == 0) return 1.0;
    double hm1 = 1.0;       // H_0
    double h = 2.0 * x;     // H_1
    for (unsigned j = 1; j < m; ++j) {
        double hp1 = 2.0 * x * h - 2.0 * j * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double bessel_i_crossover(double nu) {
    return std::max(25.0, 0.5 * nu * nu);
}

namespace detail {

LogValue bessel_i_series(double nu, double z) {
    // I_nu(z) = (z/2)^nu / Gamma(nu+1) * sum_j t_j,  t_0 = 1,
    // t_j = t_{j-1} * (z^2/4) / (j (j+nu)).
    const double q = 0.25 * z * z;
    double sum = 1.0;
    double term = 1.0;
    double log_scale = 0.0;
    for (unsigned j = 1; j < 200000; ++j) {
        term *= q / (j * (j + nu));
        sum += term;
        if (term < sum * 1e-18) break;
        if (sum > 1e250) {
            sum *= 1e-250;
            term *= 1e-250;
            log_scale += 250.0 * std::log(10.0);
        }
    }
    double lm = std::log(sum) + log_scale
                + nu * std::log(0.5 * z) - std::lgamma(nu + 1.0);
    return LogValue::from_log(1, lm);
}

LogValue bessel_i_asymptotic(double nu, double z) {
    // I_nu(z) ~ e^z / sqrt(2 pi z) * sum_j (-1)^j a_j(nu) / z^j,
    // a_j = prod_{l=1..j} (4 nu^2 - (2l-1)^2) / (8 l).
    const double mu = 4.0 * nu * nu;
    double sum = 1.0;
    double term = 1.0;
    double prev = std::fabs(term);
    for (unsigned j = 1; j <= 60; ++j) {
        term *= -(mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * z);
        if (std::fabs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::fabs(term);
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    double lm = z - 0.5 * std::log(2.0 * M_PI * z) + std::log(sum);
    return LogValue::from_log(1, lm);
}

} // namespace detail

LogValue bessel_i_scaled(double nu, double z) {
    if (!(nu > -1.0)) throw std::domain_error("bessel_i_scaled: nu <= -1");
    if (z < 0.0) throw std::domain_error("bessel_i_scaled: z < 0");
    if (z == 0.0) {
        if (nu == 0.0) return LogValue::one();
        if (nu > 0.0) return LogValue::zero();
        return LogValue::from_log(1, std::numeric_limits<double>::infinity());
    }
    if (z < bessel_i_crossover(nu)) return detail::bessel_i_series(nu, z);
    return detail::bessel_i_asymptotic(nu, z);
}

} // namespace lagvar
