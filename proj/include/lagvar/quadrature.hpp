#ifndef LAGVAR_QUADRATURE_HPP
#define LAGVAR_QUADRATURE_HPP

#include <vector>

namespace lagvar {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for integral_0^inf f(x) x^gamma e^{-x} dx, gamma > -1.
// Weights sum to Gamma(gamma+1).
QuadRule gauss_laguerre(int n, double gamma);

// Nodes/weights for integral_{-1}^1 f(x) (1-x)^a (1+x)^b dx, a,b > -1.
QuadRule gauss_jacobi(int n, double a, double b);

// Nodes/weights for integral_{lo}^{hi} f(x) dx.
QuadRule gauss_legendre(int n, double lo, double hi);

} // namespace lagvar

#endif
