#include "lagvar/weyl.hpp"

#include "lagvar/quadrature.hpp"
#include "lagvar/special.hpp"

#include <cmath>
#include <stdexcept>

namespace lagvar {

WeylOrder WeylOrder::make(double beta) {
    if (beta < 0.0) throw std::invalid_argument("WeylOrder: beta < 0");
    WeylOrder o;
    o.beta = beta;
    o.m = static_cast<int>(std::floor(beta)) + 1;
    return o;
}

TimeGrid TimeGrid::geometric(double t_lo, double t_hi, int n) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo) || n < 2)
        throw std::invalid_argument("TimeGrid::geometric: bad range");
    TimeGrid g;
    g.times.resize(n);
    const double q = std::log(t_hi / t_lo) / (n - 1);
    for (int i = 0; i < n; ++i) g.times[i] = t_hi * std::exp(-q * i);
    g.times.back() = t_lo;
    return g;
}

std::complex<double> weyl_scalar(
    const std::function<std::complex<double>(double)>& g_m, const WeylOrder& order,
    double t) {
    if (!(t > 0.0)) throw std::invalid_argument("weyl_scalar: t <= 0");
    const double beta = order.beta;
    const int m = order.m;
    const double e = m - beta - 1.0;  // exponent of s, in (-1, 0]

    // near part: s in (0, t], Gauss-Jacobi absorbing s^e
    std::complex<double> acc = 0.0;
    {
        QuadRule r = gauss_jacobi(80, 0.0, e);
        const double scale = std::pow(0.5 * t, e + 1.0) / std::pow(2.0, e);
        for (size_t q = 0; q < r.nodes.size(); ++q) {
            double s = 0.5 * t * (1.0 + r.nodes[q]);
            acc += r.weights[q] * g_m(t + s);
        }
        acc *= scale;
    }
    // far part: dyadic panels [t 2^j, t 2^{j+1}]
    {
        QuadRule leg = gauss_jacobi(32, 0.0, 0.0);
        double decay_watch = 0.0;
        int grow_streak = 0;
        for (int j = 0; j < 200; ++j) {
            double lo = t * std::ldexp(1.0, j);
            double hi = 2.0 * lo;
            std::complex<double> panel = 0.0;
            for (size_t q = 0; q < leg.nodes.size(); ++q) {
                double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * leg.nodes[q];
                panel += 0.5 * (hi - lo) * leg.weights[q] * g_m(t + s) * std::pow(s, e);
            }
            acc += panel;
            double mag = std::abs(panel);
            if (j > 0) {
                if (mag > decay_watch * 1.0000001) {
                    if (++grow_streak >= 6)
                        throw std::runtime_error("weyl_scalar: integrand tail not decaying");
                } else {
                    grow_streak = 0;
                }
            }
            decay_watch = mag;
            if (mag < 1e-17 * (std::abs(acc) + 1e-300) && j > 3) break;
        }
    }
    const std::complex<double> phase = std::polar(1.0, M_PI * (m - beta));
    return phase / std::tgamma(m - beta) * acc;
}

namespace {
constexpr double kVLogLo = -70.0;
constexpr double kVLogHi = 6.6;
constexpr double kVStep = 0.1;
constexpr double kTauStep = 0.025;
constexpr double kTauMax = 2400.0;
constexpr int kNzStart = 80;
constexpr int kNzCap = 8192;
} // namespace

WeylEvaluator::WeylEvaluator(const SemigroupEngine& engine, const GridFunction& f,
                             const WeylOrder& order, double t_min_hint)
    : engine_(engine), order_(order), nodes_(f.size()) {
    if (!(t_min_hint > 0.0)) throw std::invalid_argument("WeylEvaluator: t_min_hint <= 0");
    heat_ = engine.make_heat_cache(f);
    if (order_.beta == 0.0) return;  // identity case routes to the Poisson path

    const double beta = order_.beta;
    const int m = order_.m;
    prefactor_ = std::polar(1.0, -M_PI * beta)
                 / (std::tgamma(m - beta) * 2.0 * std::sqrt(M_PI))
                 * std::pow(2.0, -(m - 1.0));

    tau_ladder_.lo = std::log(0.9 * t_min_hint);
    tau_ladder_.h = kTauStep;
    tau_ladder_.count =
        static_cast<int>(std::ceil((std::log(kTauMax) - tau_ladder_.lo) / kTauStep)) + 1;
    b_samples_.resize(tau_ladder_.count);
    for (int i = 0; i < tau_ladder_.count; ++i)
        inner_core_into(std::exp(tau_ladder_.theta(i)), b_samples_[i]);
}

// B(tau) = int_0^inf e^{-v} v^{m/2-1} H_{m+1}(sqrt v) W_{tau^2/(4v)} f dv,
// trapezoid in log v.
void WeylEvaluator::inner_core_into(double tau, std::vector<std::complex<double>>& out) const {
    const int m = order_.m;
    out.assign(nodes_, {0.0, 0.0});
    std::vector<std::complex<double>> tmp;
    const bool delta = engine_.variant() == HeatVariant::WDelta;
    const double gap = engine_.grid()->alpha().sum_alpha() + engine_.grid()->dim();
    for (double s = kVLogLo; s <= kVLogHi + 1e-12; s += kVStep) {
        const double v = std::exp(s);
        const double c = kVStep * std::exp(-v + 0.5 * m * s) * hermite_poly(m + 1, std::sqrt(v));
        if (c == 0.0) continue;
        const double th = tau * tau / (4.0 * v);  // caller clock
        double scale = 1.0;
        if (delta) scale = std::exp(-th * gap);
        heat_->apply_into(delta ? 2.0 * th : th, tmp);
        const double cc = c * scale;
        for (int i = 0; i < nodes_; ++i) out[i] += cc * tmp[i];
    }
}

const QuadRule& WeylEvaluator::jacobi_rule(int n) const {
    auto it = jacobi_cache_.find(n);
    if (it == jacobi_cache_.end()) {
        it = jacobi_cache_
                 .emplace(n, gauss_jacobi(n, order_.beta - 1.0, order_.m - order_.beta - 1.0))
                 .first;
    }
    return it->second;
}

void WeylEvaluator::b_at_tau(double log_tau, std::vector<std::complex<double>>& out) const {
    out.assign(nodes_, {0.0, 0.0});
    if (log_tau >= tau_ladder_.theta(tau_ladder_.count - 1)) return;  // fully decayed
    if (log_tau < tau_ladder_.lo)
        throw std::invalid_argument("WeylEvaluator: t below the t_min_hint it was built for");
    LagrangeStencil st = lagrange_stencil(tau_ladder_, log_tau);
    for (int j = 0; j < 8; ++j) {
        const auto& s = b_samples_[st.start + j];
        const double w = st.w[j];
        for (int i = 0; i < nodes_; ++i) out[i] += w * s[i];
    }
}

void WeylEvaluator::eval_into(double t, std::vector<std::complex<double>>& out) const {
    if (!(t > 0.0)) throw std::invalid_argument("WeylEvaluator: t <= 0");
    if (order_.beta == 0.0) {
        engine_.apply_poisson_cached(*heat_, t, out);
        return;
    }
    double bscale = 0.0;
    std::vector<std::complex<double>> bvec, acc, prev;
    const double log_t = std::log(t);
    int nz = kNzStart;
    for (;; nz *= 2) {
        const QuadRule& rule = jacobi_rule(nz);
        acc.assign(nodes_, {0.0, 0.0});
        for (int q = 0; q < nz; ++q) {
            const double w = 0.5 * (1.0 + rule.nodes[q]);
            b_at_tau(log_t - std::log1p(-w), bvec);
            const double wq = rule.weights[q];
            for (int i = 0; i < nodes_; ++i) acc[i] += wq * bvec[i];
        }
        if (!prev.empty()) {
            double diff = 0.0, mag = 0.0;
            for (int i = 0; i < nodes_; ++i) {
                diff = std::max(diff, std::abs(acc[i] - prev[i]));
                mag = std::max(mag, std::abs(acc[i]));
            }
            if (bscale == 0.0)
                for (const auto& bs : b_samples_)
                    for (const auto& v : bs) bscale = std::max(bscale, std::abs(v));
            if (diff <= 1e-9 * mag + 1e-12 * bscale) break;
        }
        if (2 * nz > kNzCap)
            throw std::runtime_error("weyl: w-quadrature did not stabilize (configuration)");
        prev = acc;
    }
    last_nz_ = nz;
    out.resize(nodes_);
    for (int i = 0; i < nodes_; ++i) out[i] = prefactor_ * acc[i];
}

std::vector<std::complex<double>> WeylEvaluator::eval(double t) const {
    std::vector<std::complex<double>> out;
    eval_into(t, out);
    return out;
}

Trajectory WeylEvaluator::trajectory(const TimeGrid& times) const {
    Trajectory traj(times.times, nodes_);
    std::vector<std::complex<double>> row;
    for (int p = 0; p < traj.param_count(); ++p) {
        eval_into(traj.params[p], row);
        for (int i = 0; i < nodes_; ++i) traj.at(p, i) = row[i];
    }
    return traj;
}

Trajectory weyl_poisson_trajectory(const SemigroupEngine& engine, const GridFunction& f,
                                   const WeylOrder& order, const TimeGrid& times) {
    if (times.times.empty()) throw std::invalid_argument("weyl_poisson_trajectory: no times");
    WeylEvaluator ev(engine, f, order, times.times.back());
    return ev.trajectory(times);
}

} // namespace lagvar
