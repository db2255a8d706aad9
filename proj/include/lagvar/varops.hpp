#ifndef LAGVAR_VAROPS_HPP
#define LAGVAR_VAROPS_HPP

#include "lagvar/measure.hpp"
#include "lagvar/semigroup.hpp"
#include "lagvar/trajectory.hpp"

#include <complex>
#include <span>
#include <vector>

namespace lagvar {

// Exact rho-variation of a sampled trajectory: max over increasing-in-index
// subsequences of (sum |v_{j+1} - v_j|^rho)^{1/rho}, by dynamic programming.
// rho > 2 here; the permissive variant covers the rho >= 1 uses inside the
// oscillation and short-variation operators.
double rho_variation(std::span<const std::complex<double>> values, double rho);
double rho_variation_permissive(std::span<const std::complex<double>> values, double rho);

// (sum_j sup_{ladder_{j+1} <= s' < s <= ladder_j} |v(s)-v(s')|^2)^{1/2} with the
// sup over sampled params in each bracket.
double oscillation(std::span<const double> params,
                   std::span<const std::complex<double>> values,
                   std::span<const double> ladder);

// Maximal number of moves larger than lambda over disjoint parameter intervals
// (shared endpoints allowed); greedy closing each jump at the earliest
// admissible endpoint.
int jump_count(std::span<const double> params,
               std::span<const std::complex<double>> values, double lambda);

// l^2 aggregate over dyadic blocks (2^{-k}, 2^{-k+1}] of the in-block
// 2-variation.
double short_variation(std::span<const double> params,
                       std::span<const std::complex<double>> values);

struct GFunctionResult {
    GridFunction g;  // real part holds the g-function values
    // head+tail of the u^beta e^{-u} eigen-profile outside [t_lo, t_hi],
    // relative to the full profile at unit eigenvalue
    double profile_truncation_bound = 0.0;
};

// (int_{t_lo}^{t_hi} |t^beta D^beta P_t f|^2 dt/t)^{1/2} per node, log-uniform
// trapezoid with n_t points.
GFunctionResult g_function(const SemigroupEngine& engine, const GridFunction& f,
                           double beta, double t_lo, double t_hi, int n_t);

// Dyadic powers of two inside [lo, hi], decreasing; the standard oscillation
// ladder.
std::vector<double> dyadic_ladder_in(double lo, double hi);

} // namespace lagvar

#endif
