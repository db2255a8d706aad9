#ifndef LAGVAR_RIESZ_HPP
#define LAGVAR_RIESZ_HPP

#include "lagvar/log_value.hpp"
#include "lagvar/measure.hpp"
#include "lagvar/trajectory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lagvar {

// --- split geometry -------------------------------------------------------

// q_{+-}(x,y,s) = sum_i (x_i^2 + y_i^2 +- 2 x_i y_i s_i)
double q_plus(const std::vector<double>& x, const std::vector<double>& y,
              const std::vector<double>& s);
double q_minus(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& s);

// C_0 = 9 (n + sum alpha_i)
double split_c0(const AlphaIndex& alpha);

// q_-(x,y,s)^{1/2} <= C_0 tau / (1 + |x| + |y|)
bool in_local_region(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& s, const AlphaIndex& alpha, double tau);

// quintic smoothstep: 1 on [0,1], 0 on [2,inf), C^2 in between
double smoothstep(double xi);

// phi(x,y,s) = smoothstep( q_-^{1/2} (1+|x|+|y|) / C_0 ); 1 on N_1, 0 off N_2
double cutoff_phi(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& s, const AlphaIndex& alpha);

// Per-axis Gauss-Jacobi rules for the normalized weight
// prod Gamma(a_i+1)/(Gamma(a_i+1/2) sqrt(pi)) (1-s_i^2)^{a_i-1/2};
// each axis' weights sum to 1.
std::vector<QuadRule> jacobi_pi_rules(const AlphaIndex& alpha, int per_axis);

// --- kernels ---------------------------------------------------------------

// Riesz kernel in the Delta setting: (1/sqrt(pi)) int_0^inf
// d/dx_i W_t(x,y) dt/sqrt(t), analytic Bessel-derivative form, adaptive
// log-t trapezoid refined to rtol.
double riesz_kernel(int axis, const AlphaIndex& alpha, const std::vector<double>& x,
                    const std::vector<double>& y, double rtol = 1e-8);

// Conjugate-route kernel built from the Lebesgue-picture semigroup
// 2(xy)^{1/2} e^{-t}/(1-e^{-2t}) I_a(...) exp(...) and the derivative
// D_a f = f' - (a+1/2)/x f + x f; an independent pipeline from riesz_kernel.
double conjugate_riesz_kernel(int axis, const AlphaIndex& alpha,
                              const std::vector<double>& x,
                              const std::vector<double>& y, double rtol = 1e-8);

enum class GlobalKernelSetting { PoissonVariation, Riesz };

// Two-case dominating kernel K_alpha on the complement of N_1, in log form.
LogValue global_kernel_K(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<double>& s, const AlphaIndex& alpha,
                         GlobalKernelSetting setting);

// g_{x,y,s}(u) = (1-e^{-u})^{-n-sum a} exp(-q_-(e^{-u/2}x, y, s)/(1-e^{-u})).
// Stationary points are roots of a quartic in e^{-u/2}; sup and total
// variation come from the segment endpoints.
struct GProfileStats {
    double log_sup;         // log sup_u g
    double total_variation; // int_0^inf |g'(u)| du
};
GProfileStats g_profile_stats(const std::vector<double>& x, const std::vector<double>& y,
                              const std::vector<double>& s, const AlphaIndex& alpha,
                              int scan_points = 2000);

// s-resolved local Riesz kernel (t-integral with the cutoff phi and the
// e^{|y|^2} factor of the m_alpha pairing).
double local_riesz_s_kernel(int axis, const AlphaIndex& alpha,
                            const std::vector<double>& x, const std::vector<double>& y,
                            const std::vector<double>& s, bool with_phi = true,
                            double rtol = 1e-7);

// s-integrated local kernel against the normalized Jacobi weight.
double local_riesz_kernel(int axis, const AlphaIndex& alpha,
                          const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<QuadRule>& s_rules, double rtol = 1e-7);

// --- truncated operators on a nu_alpha grid --------------------------------

class RieszOperator {
public:
    RieszOperator(GridPtr grid, int axis, double rtol = 1e-8);

    const GridPtr& grid() const { return grid_; }
    int axis() const { return axis_; }

    // kernel value against node weight already folded in
    double weighted_kernel(int row, int col) const {
        return kernel_[static_cast<size_t>(row) * n_ + col];
    }

    GridFunction apply_truncated(const GridFunction& f, double eps) const;

    // One value per (eps, node); eps decreasing.  With the breakpoint grid the
    // sampled family is exactly the discrete operator family.
    Trajectory truncation_trajectory(const GridFunction& f,
                                     const std::vector<double>& eps_grid) const;

    // Sorted distinct inter-node distances (descending) plus half the minimum;
    // thinned to at most cap entries with the given seed.
    std::vector<double> default_eps_grid(int cap = 4000, uint64_t seed = 12345) const;

private:
    GridPtr grid_;
    int axis_;
    int n_;
    std::vector<double> kernel_;     // row-major, weight folded, diagonal 0
    std::vector<std::vector<double>> dist_;  // dist_[row] sorted descending
    std::vector<std::vector<int>> order_;    // node indices matching dist_
};

// --- verification sweeps ----------------------------------------------------

struct BoundReport {
    std::string bound_id;
    std::vector<double> alpha;
    double tau = 0.0;
    int n_samples = 0;
    double empirical_C = 0.0;
    double refinement_ratio = 0.0;  // refined C / base C
    bool pass = false;              // finite and |ratio-1| <= 0.20
};

std::vector<BoundReport> verify_local_bounds(const AlphaIndex& alpha, double tau,
                                             int sample_size, std::uint64_t seed);

BoundReport verify_global_domination(const AlphaIndex& alpha, int sample_size,
                                     std::uint64_t seed,
                                     GlobalKernelSetting setting =
                                         GlobalKernelSetting::PoissonVariation);

std::string bound_reports_to_json(const std::vector<BoundReport>& reports);

} // namespace lagvar

#endif
