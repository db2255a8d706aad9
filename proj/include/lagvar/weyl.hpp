#ifndef LAGVAR_WEYL_HPP
#define LAGVAR_WEYL_HPP

#include "lagvar/semigroup.hpp"
#include "lagvar/trajectory.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>

namespace lagvar {

// beta >= 0 with m - 1 <= beta < m; m = floor(beta) + 1 for every beta,
// including integers, so m - beta stays in (0,1].
struct WeylOrder {
    double beta = 0.0;
    int m = 1;

    static WeylOrder make(double beta);
};

struct TimeGrid {
    std::vector<double> times;  // strictly decreasing

    static TimeGrid geometric(double t_lo, double t_hi, int n);
    static TimeGrid default_grid() { return geometric(1e-3, 20.0, 160); }
};

// Direct quadrature of D^beta g(t) = e^{i pi (m-beta)} / Gamma(m-beta)
// int_0^infty g^{(m)}(t+s) s^{m-beta-1} ds given the analytic m-th derivative.
// The independent oracle for the trajectory evaluator.
std::complex<double> weyl_scalar(
    const std::function<std::complex<double>(double)>& g_m, const WeylOrder& order,
    double t);

// Evaluates t^beta D_t^beta P_t f on the whole grid through the subordinated
// Hermite representation: an inner log-v trapezoid over heat applications and
// an outer Gauss-Jacobi rule in w (z = w/(1-w)), doubled until stable.
class WeylEvaluator {
public:
    WeylEvaluator(const SemigroupEngine& engine, const GridFunction& f,
                  const WeylOrder& order, double t_min_hint);

    void eval_into(double t, std::vector<std::complex<double>>& out) const;
    std::vector<std::complex<double>> eval(double t) const;

    Trajectory trajectory(const TimeGrid& times) const;

    // w-rule size the last eval settled at (diagnostic)
    int last_nz() const { return last_nz_; }

private:
    void inner_core_into(double tau, std::vector<std::complex<double>>& out) const;
    const QuadRule& jacobi_rule(int n) const;
    void b_at_tau(double log_tau, std::vector<std::complex<double>>& out) const;

    const SemigroupEngine& engine_;
    WeylOrder order_;
    int nodes_ = 0;
    std::shared_ptr<HeatFunctionCache> heat_;
    std::complex<double> prefactor_;
    // B(tau) samples on a log-tau ladder
    ThetaLadder tau_ladder_;
    std::vector<std::vector<std::complex<double>>> b_samples_;
    mutable std::map<int, QuadRule> jacobi_cache_;
    mutable int last_nz_ = 0;
};

Trajectory weyl_poisson_trajectory(const SemigroupEngine& engine, const GridFunction& f,
                                   const WeylOrder& order, const TimeGrid& times);

} // namespace lagvar

#endif
