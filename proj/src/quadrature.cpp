#include "lagvar/quadrature.hpp"

#include <cmath>
#include <stdexcept>

extern "C" {
void dstev_(const char* jobz, const int* n, double* d, double* e, double* z,
            const int* ldz, double* work, int* info);
}

namespace lagvar {

namespace {

// Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix are the
// nodes; weights are mu0 times the squared first components of the eigenvectors.
QuadRule golub_welsch(std::vector<double> diag, std::vector<double> offdiag,
                      double mu0) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> z(static_cast<size_t>(n) * n);
    std::vector<double> work(n > 1 ? 2 * n - 2 : 1);
    int info = 0;
    dstev_("V", &n, diag.data(), offdiag.data(), z.data(), &n, work.data(), &info);
    if (info != 0) throw std::runtime_error("golub_welsch: dstev failed");
    QuadRule rule;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        double v = z[static_cast<size_t>(j) * n];
        rule.weights[j] = mu0 * v * v;
    }
    return rule;
}

} // namespace

QuadRule gauss_laguerre(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n < 1");
    if (!(gamma > -1.0)) throw std::invalid_argument("gauss_laguerre: gamma <= -1");
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) d[i] = 2.0 * i + gamma + 1.0;
    for (int i = 1; i < n; ++i) e[i - 1] = std::sqrt(i * (i + gamma));
    return golub_welsch(std::move(d), std::move(e), std::exp(std::lgamma(gamma + 1.0)));
}

QuadRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n < 1");
    if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: a,b <= -1");
    std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
    const double ab = a + b;
    d[0] = (b - a) / (ab + 2.0);
    for (int i = 1; i < n; ++i) {
        double k = 2.0 * i + ab;
        d[i] = (b * b - a * a) / (k * (k + 2.0));
    }
    for (int i = 1; i < n; ++i) {
        double b2;
        if (i == 1) {
            // (i + a + b) cancels against (2i + a + b - 1); the generic formula
            // divides 0/0 when a + b = -1.
            b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        } else {
            double k = 2.0 * i + ab;
            b2 = 4.0 * i * (i + a) * (i + b) * (i + ab)
                 / (k * k * (k + 1.0) * (k - 1.0));
        }
        e[i - 1] = std::sqrt(b2);
    }
    double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0)
                     + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
    return golub_welsch(std::move(d), std::move(e), std::exp(log_mu0));
}

QuadRule gauss_legendre(int n, double lo, double hi) {
    QuadRule base = gauss_jacobi(n, 0.0, 0.0);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        base.nodes[i] = mid + half * base.nodes[i];
        base.weights[i] *= half;
    }
    return base;
}

} // namespace lagvar
