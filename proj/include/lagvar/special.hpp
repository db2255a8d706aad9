#ifndef LAGVAR_SPECIAL_HPP
#define LAGVAR_SPECIAL_HPP

#include "lagvar/log_value.hpp"

namespace lagvar {

// Generalized Laguerre polynomial L_k^a(x), three-term recurrence.
double laguerre_poly(unsigned k, double a, double x);

// sqrt(Gamma(k+1)Gamma(a+1)/Gamma(k+a+1)) * L_k^a(x); orthonormal on
// (0,inf) against x^a e^{-x}/Gamma(a+1).
double laguerre_poly_normalized(unsigned k, double a, double x);

// d/dx L_k^a(x) = -L_{k-1}^{a+1}(x).
double laguerre_poly_deriv(unsigned k, double a, double x);

// Physicists' Hermite polynomial H_m(x).
double hermite_poly(unsigned m, double x);

// Modified Bessel function of the first kind, order nu > -1, z >= 0,
// returned as a LogValue.  Ascending series below the crossover
// z* = max(25, nu^2/2), large-argument asymptotic expansion above it.
LogValue bessel_i_scaled(double nu, double z);

// Crossover point between the two branches (exposed for the overlap tests).
double bessel_i_crossover(double nu);

namespace detail {
LogValue bessel_i_series(double nu, double z);
LogValue bessel_i_asymptotic(double nu, double z);
}

} // namespace lagvar

#endif
