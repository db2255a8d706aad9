#ifndef LAGVAR_SEMIGROUP_HPP
#define LAGVAR_SEMIGROUP_HPP

#include "lagvar/log_value.hpp"
#include "lagvar/measure.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace lagvar {

enum class HeatVariant {
    W,       // mu_alpha picture, Hille-Hardy kernel W_t(x,y)
    WHat,    // nu_alpha picture, W_t(x^2,y^2)
    WDelta   // nu_alpha picture, e^{-t(sum alpha + n)} W_{2t}(x^2,y^2)
};

// One-dimensional Hille-Hardy kernel W_u^{(a)}(b1,b2) in log form.
LogValue hille_hardy_1d(double a, double u, double b1, double b2);

// d/db1 of the kernel above:
//   -r/(1-r) W^{(a)} + r b2 / ((1-r)(a+1)) W^{(a+1)},  r = e^{-u}.
// Returned as the pair of LogValue terms so callers can keep log precision.
std::pair<LogValue, LogValue> hille_hardy_1d_deriv_terms(double a, double u,
                                                         double b1, double b2);

LogValue heat_kernel(HeatVariant variant, const AlphaIndex& alpha, double t,
                     const std::vector<double>& x, const std::vector<double>& y);

double poisson_kernel(HeatVariant variant, const AlphaIndex& alpha, double t,
                      const std::vector<double>& x, const std::vector<double>& y);

using SpectralMultiplier = std::function<std::complex<double>(const std::vector<int>&)>;

struct SpectralResult {
    GridFunction g;
    double tail_coeff_bound = 0.0;  // max |c_k| on the truncation boundary shell
};

// Heat values below this time are returned unchanged (kernel concentrates
// below grid resolution); callers can observe the clamp count.
inline constexpr double kSmallTimeClamp = 1e-6;

// Log-uniform ladder over which the base heat matrices are sampled; the
// smooth-in-log-u interpolation path serves subordination and the fractional
// derivative quadratures.
struct ThetaLadder {
    double lo = 0.0, h = 0.0;
    int count = 0;
    double theta(int i) const { return lo + h * i; }
};

class SemigroupEngine;

// Per-function samples M(e^theta) f on the ladder; applying the heat operator
// at an arbitrary u is an 8-point Lagrange interpolation in theta.
class HeatFunctionCache {
public:
    std::vector<std::complex<double>> apply(double u) const;
    void apply_into(double u, std::vector<std::complex<double>>& out) const;
    long clamp_count() const { return clamps_; }

private:
    friend class SemigroupEngine;
    ThetaLadder ladder_;
    int node_count_ = 0;
    std::vector<std::vector<std::complex<double>>> samples_;
    mutable long clamps_ = 0;
};

class SemigroupEngine {
public:
    SemigroupEngine(GridPtr grid, HeatVariant variant);

    const GridPtr& grid() const { return grid_; }
    HeatVariant variant() const { return variant_; }

    // Quadrature of the kernel against f; exact per-axis matrices at this t.
    GridFunction apply_heat(const GridFunction& f, double t) const;

    // Subordination P_t f = (1/sqrt(pi)) int e^{-v} v^{-1/2} W_{t^2/4v} f dv,
    // log-v trapezoid over interpolated heat samples.
    GridFunction apply_poisson(const GridFunction& f, double t) const;
    void apply_poisson_cached(const HeatFunctionCache& cache, double t,
                              std::vector<std::complex<double>>& out) const;

    // Independent eigen-series path: sum_k m(k) <f,basis_k> basis_k with
    // coefficients from grid quadrature.  Tensor truncation k_i <= K.
    SpectralResult spectral_apply(const GridFunction& f,
                                  const SpectralMultiplier& multiplier, int K) const;

    // Orthonormal eigenfunction for the multi-index k (shared by all variants;
    // evaluated on the grid's base coordinates).
    GridFunction eigenfunction(const std::vector<int>& k) const;

    double eigenvalue_heat(const std::vector<int>& k) const;

    std::shared_ptr<HeatFunctionCache> make_heat_cache(const GridFunction& f) const;

    long small_time_clamp_count() const { return small_time_clamps_; }

private:
    friend class HeatFunctionCache;

    using AxisMatrix = std::vector<double>;  // row-major N x N, weights folded in

    // time in the caller's clock -> base Hille-Hardy clock + scalar prefactor
    void map_time(double t, double& u, double& log_prefactor) const;

    const std::vector<AxisMatrix>& base_matrices(double u) const;
    std::vector<AxisMatrix> build_base_matrices(double u) const;

    void tensor_apply(const std::vector<AxisMatrix>& mats,
                      const std::vector<std::complex<double>>& in,
                      std::vector<std::complex<double>>& out) const;

    const ThetaLadder& theta_ladder() const;

    GridPtr grid_;
    HeatVariant variant_;
    mutable std::map<double, std::vector<AxisMatrix>> exact_cache_;
    mutable std::vector<std::vector<AxisMatrix>> ladder_matrices_;
    mutable ThetaLadder ladder_;
    mutable long small_time_clamps_ = 0;
};

// Equispaced 8-point Lagrange weights for interpolation on a ThetaLadder.
struct LagrangeStencil {
    int start = 0;
    double w[8] = {0};
};
LagrangeStencil lagrange_stencil(const ThetaLadder& ladder, double theta);

} // namespace lagvar

#endif
