#include "doctest.h"

#include "lagvar/log_value.hpp"
#include "lagvar/rng.hpp"
#include "lagvar/special.hpp"

#include <cmath>

using namespace lagvar;

TEST_CASE("LogValue round-trips and multiplies") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        double mag = std::exp(rng.uniform(-690.0, 690.0));
        double v = (rng.uniform() < 0.5 ? -1.0 : 1.0) * mag;
        LogValue lv = LogValue::from_real(v);
        CHECK(std::fabs(lv.value() - v) <= 1e-14 * std::fabs(v));
    }
    LogValue a = LogValue::from_real(-3.0), b = LogValue::from_real(2.0);
    CHECK((a * b).value() == doctest::Approx(-6.0));
    CHECK((a * LogValue::zero()).is_zero());
    CHECK(LogValue::from_real(0.0).is_zero());
}

TEST_CASE("Laguerre polynomials: closed low-degree values") {
    CHECK(laguerre_poly(0, 0.7, 3.2) == 1.0);
    CHECK(laguerre_poly(1, 0.3, 1.7) == doctest::Approx(0.3 + 1.0 - 1.7).epsilon(1e-15));
    // exact rational: L_2^0(x) = (x^2 - 4x + 2)/2 -> L_2^0(1) = -1/2
    CHECK(laguerre_poly(2, 0.0, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("Laguerre recurrence consistency") {
    for (double a : {0.3, 1.0, 2.5}) {
        for (double x : {0.05, 0.5, 3.0, 17.0, 50.0}) {
            for (unsigned k = 1; k <= 29; ++k) {
                double lm1 = laguerre_poly(k - 1, a, x);
                double l = laguerre_poly(k, a, x);
                double lp1 = laguerre_poly(k + 1, a, x);
                double rhs = ((2.0 * k + a + 1.0 - x) * l - (k + a) * lm1) / (k + 1.0);
                double scale = std::max({std::fabs(lp1), std::fabs(l), 1.0});
                CHECK(std::fabs(lp1 - rhs) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("Laguerre derivative identity") {
    // d/dx L_k^a = -L_{k-1}^{a+1}, cross-checked by central differences
    for (unsigned k : {1u, 3u, 6u}) {
        for (double x : {0.3, 2.0, 9.0}) {
            double h = 1e-6 * (1.0 + x);
            double fd = (laguerre_poly(k, 1.2, x + h) - laguerre_poly(k, 1.2, x - h))
                        / (2.0 * h);
            CHECK(laguerre_poly_deriv(k, 1.2, x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("Hermite polynomials") {
    CHECK(hermite_poly(0, 5.0) == 1.0);
    CHECK(hermite_poly(1, 1.5) == doctest::Approx(3.0).epsilon(1e-15));
    // H_3(x) = 8x^3 - 12x
    CHECK(hermite_poly(3, 1.0) == doctest::Approx(-4.0).epsilon(1e-15));
    for (double x : {-2.0, 0.3, 1.7}) {
        for (unsigned m = 1; m <= 10; ++m) {
            double rhs = 2.0 * x * hermite_poly(m, x) - 2.0 * m * hermite_poly(m - 1, x);
            CHECK(hermite_poly(m + 1, x) ==
                  doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("Bessel I: frozen reference values") {
    // half-integer closed form: I_{1/2}(z) = sqrt(2/(pi z)) sinh z
    double exact = std::sqrt(2.0 / (M_PI * 2.0)) * std::sinh(2.0);
    CHECK(bessel_i_scaled(0.5, 2.0).log_mag == doctest::Approx(std::log(exact)).epsilon(1e-13));
    // ascending series summed in extended precision
    CHECK(bessel_i_scaled(0.0, 1.0).log_mag ==
          doctest::Approx(std::log(1.2660658777520084)).epsilon(1e-14));
    // small-argument leading term: I_3(z) ~ (z/2)^3 / Gamma(4)
    double z = 1e-6;
    double lead = 3.0 * std::log(0.5 * z) - std::lgamma(4.0);
    CHECK(bessel_i_scaled(3.0, z).log_mag == doctest::Approx(lead).epsilon(1e-9));
    CHECK(bessel_i_scaled(3.0, 0.0).is_zero());
    CHECK(bessel_i_scaled(0.0, 0.0).value() == 1.0);
    CHECK_THROWS_AS(bessel_i_scaled(1.0, -1.0), std::domain_error);
}

TEST_CASE("Bessel I: branch agreement on the overlap window") {
    for (double nu : {0.0, 0.5, 1.7, 4.0}) {
        double zs = bessel_i_crossover(nu);
        for (double f = 0.8; f <= 1.2001; f += 0.05) {
            double z = f * zs;
            double ls = detail::bessel_i_series(nu, z).log_mag;
            double la = detail::bessel_i_asymptotic(nu, z).log_mag;
            // log agreement to 1e-10 is relative agreement of the values
            CHECK(std::fabs(ls - la) <= 1e-10);
        }
    }
}

TEST_CASE("Bessel I: positive and increasing in z") {
    for (double nu : {0.2, 1.0, 3.5}) {
        double prev = -1e308;
        for (double z = 0.1; z < 2000.0; z *= 1.7) {
            LogValue v = bessel_i_scaled(nu, z);
            CHECK(v.sign == 1);
            CHECK(v.log_mag > prev);
            prev = v.log_mag;
        }
    }
}

TEST_CASE("Bessel I agrees with the standard library where it can be trusted") {
    for (double nu : {0.0, 0.5, 1.0, 2.3}) {
        for (double z : {0.3, 1.0, 4.0, 11.0, 40.0, 200.0}) {
            double ref = std::cyl_bessel_i(nu, z);
            if (!std::isfinite(ref) || ref <= 0.0) continue;
            CHECK(bessel_i_scaled(nu, z).log_mag ==
                  doctest::Approx(std::log(ref)).epsilon(1e-10));
        }
    }
}
