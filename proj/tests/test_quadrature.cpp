#include "doctest.h"

#include "lagvar/quadrature.hpp"

#include <cmath>
#include <numeric>

using namespace lagvar;

TEST_CASE("generalized Gauss-Laguerre: moment exactness") {
    // integral_0^inf x^d x^a e^{-x} dx = Gamma(a+d+1)
    for (double a : {0.0, 0.5, 1.0, 2.3}) {
        QuadRule r = gauss_laguerre(40, a);
        for (int d = 0; d <= 20; ++d) {
            double acc = 0.0;
            for (size_t i = 0; i < r.nodes.size(); ++i)
                acc += r.weights[i] * std::pow(r.nodes[i], d);
            double exact = std::exp(std::lgamma(a + d + 1.0));
            CHECK(std::fabs(acc - exact) <= 1e-10 * exact);
        }
    }
}

TEST_CASE("Gauss-Jacobi: mass and a Chebyshev-weight moment") {
    // total mass 2^{a+b+1} B(a+1,b+1)
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, -0.5}, {1.3, -0.2}, {2.0, 0.5}}) {
        QuadRule r = gauss_jacobi(24, a, b);
        double total = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
        double exact = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0)
                                + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
        CHECK(total == doctest::Approx(exact).epsilon(1e-13));
    }
    // integral_{-1}^1 x^2 / sqrt(1-x^2) dx = pi/2
    QuadRule c = gauss_jacobi(16, -0.5, -0.5);
    double acc = 0.0;
    for (size_t i = 0; i < c.nodes.size(); ++i)
        acc += c.weights[i] * c.nodes[i] * c.nodes[i];
    CHECK(acc == doctest::Approx(M_PI / 2.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre on an interval") {
    QuadRule r = gauss_legendre(20, 0.0, M_PI);
    double acc = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * std::sin(r.nodes[i]);
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("quadrature argument validation") {
    CHECK_THROWS_AS(gauss_laguerre(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_laguerre(5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_jacobi(5, -1.0, 0.0), std::invalid_argument);
}
