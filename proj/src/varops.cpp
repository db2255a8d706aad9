#include "lagvar/varops.hpp"

#include "lagvar/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lagvar {

namespace {

double variation_dp(std::span<const std::complex<double>> v, double rho) {
    const int n = static_cast<int>(v.size());
    if (n < 2) return 0.0;
    std::vector<double> best(n, 0.0);
    double top = 0.0;
    for (int i = 1; i < n; ++i) {
        double b = 0.0;
        for (int j = 0; j < i; ++j) {
            double cand = best[j] + std::pow(std::abs(v[i] - v[j]), rho);
            b = std::max(b, cand);
        }
        best[i] = b;
        top = std::max(top, b);
    }
    return std::pow(top, 1.0 / rho);
}

} // namespace

double rho_variation(std::span<const std::complex<double>> values, double rho) {
    if (!(rho > 2.0)) throw std::invalid_argument("rho_variation: rho <= 2");
    return variation_dp(values, rho);
}

double rho_variation_permissive(std::span<const std::complex<double>> values, double rho) {
    if (!(rho >= 1.0)) throw std::invalid_argument("rho_variation_permissive: rho < 1");
    return variation_dp(values, rho);
}

double oscillation(std::span<const double> params,
                   std::span<const std::complex<double>> values,
                   std::span<const double> ladder) {
    if (params.size() != values.size())
        throw std::invalid_argument("oscillation: size mismatch");
    for (size_t j = 1; j < ladder.size(); ++j)
        if (!(ladder[j] < ladder[j - 1]))
            throw std::invalid_argument("oscillation: ladder not decreasing");
    double total = 0.0;
    for (size_t j = 0; j + 1 < ladder.size(); ++j) {
        const double hi = ladder[j], lo = ladder[j + 1];
        double swing = 0.0;
        for (size_t a = 0; a < params.size(); ++a) {
            if (params[a] < lo || params[a] > hi) continue;
            for (size_t b = a + 1; b < params.size(); ++b) {
                if (params[b] < lo || params[b] > hi) continue;
                swing = std::max(swing, std::abs(values[a] - values[b]));
            }
        }
        total += swing * swing;
    }
    return std::sqrt(total);
}

int jump_count(std::span<const double> params,
               std::span<const std::complex<double>> values, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("jump_count: lambda <= 0");
    if (params.size() != values.size())
        throw std::invalid_argument("jump_count: size mismatch");
    const int n = static_cast<int>(params.size());
    // ascending parameter order
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](int a, int b) { return params[a] < params[b]; });
    int count = 0;
    int pos = 0;
    while (pos < n) {
        int close = -1;
        for (int e = pos + 1; e < n && close < 0; ++e) {
            for (int b = pos; b < e; ++b) {
                if (std::abs(values[ord[e]] - values[ord[b]]) > lambda) {
                    close = e;
                    break;
                }
            }
        }
        if (close < 0) break;
        ++count;
        pos = close;
    }
    return count;
}

double short_variation(std::span<const double> params,
                       std::span<const std::complex<double>> values) {
    if (params.size() != values.size())
        throw std::invalid_argument("short_variation: size mismatch");
    // block index k with 2^{-k} < p <= 2^{-k+1}
    std::map<int, std::vector<std::complex<double>>> blocks;
    for (size_t i = 0; i < params.size(); ++i) {
        int k = static_cast<int>(std::floor(-std::log2(params[i]))) + 1;
        while (params[i] > std::ldexp(1.0, -(k - 1))) --k;
        while (params[i] <= std::ldexp(1.0, -k)) ++k;
        blocks[k].push_back(values[i]);
    }
    double total = 0.0;
    for (auto& [k, v] : blocks) {
        double b = variation_dp(v, 2.0);
        total += b * b;
    }
    return std::sqrt(total);
}

std::vector<double> dyadic_ladder_in(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("dyadic_ladder_in: bad range");
    std::vector<double> l;
    int k = static_cast<int>(std::ceil(std::log2(hi)));
    while (std::ldexp(1.0, k) > hi) --k;
    for (; std::ldexp(1.0, k) >= lo; --k) l.push_back(std::ldexp(1.0, k));
    if (l.empty() || l.back() > lo) l.push_back(lo);
    if (l.front() < hi) l.insert(l.begin(), hi);
    return l;
}

GFunctionResult g_function(const SemigroupEngine& engine, const GridFunction& f,
                           double beta, double t_lo, double t_hi, int n_t) {
    if (!(beta > 0.0)) throw std::invalid_argument("g_function: beta <= 0");
    if (!(t_lo > 0.0) || !(t_hi > t_lo) || n_t < 4)
        throw std::invalid_argument("g_function: bad t range");
    WeylOrder order = WeylOrder::make(beta);
    WeylEvaluator ev(engine, f, order, t_lo);
    const double h = std::log(t_hi / t_lo) / (n_t - 1);
    GridFunction out(f.grid);
    std::vector<double> acc(f.size(), 0.0);
    std::vector<std::complex<double>> row;
    for (int j = 0; j < n_t; ++j) {
        const double t = t_lo * std::exp(h * j);
        ev.eval_into(t, row);
        const double w = (j == 0 || j == n_t - 1) ? 0.5 * h : h;
        for (int i = 0; i < f.size(); ++i) {
            double m = std::abs(row[i]);
            acc[i] += w * m * m;
        }
    }
    GFunctionResult res;
    res.g = std::move(out);
    for (int i = 0; i < f.size(); ++i) res.g.values[i] = std::sqrt(acc[i]);
    const double full = std::tgamma(2.0 * beta) / std::pow(2.0, 2.0 * beta);
    const double head = std::pow(t_lo, 2.0 * beta) / (2.0 * beta);
    const double tail = std::pow(t_hi, 2.0 * beta - 1.0) * std::exp(-2.0 * t_hi);
    res.profile_truncation_bound = (head + tail) / full;
    return res;
}

} // namespace lagvar
