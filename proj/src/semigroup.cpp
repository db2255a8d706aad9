#include "lagvar/semigroup.hpp"

#include "lagvar/special.hpp"

#include <cmath>
#include <stdexcept>

namespace lagvar {

LogValue hille_hardy_1d(double a, double u, double b1, double b2) {
    if (!(u > 0.0)) throw std::invalid_argument("hille_hardy_1d: t <= 0");
    const double r = std::exp(-u);
    const double omr = -std::expm1(-u);  // 1 - e^{-u}
    const double z = 2.0 * std::sqrt(r * b1 * b2) / omr;
    LogValue bi = bessel_i_scaled(a, z);
    double lm = std::lgamma(a + 1.0) - std::log(omr)
                - r * (b1 + b2) / omr
                - 0.5 * a * (std::log(r) + std::log(b1) + std::log(b2))
                + bi.log_mag;
    return LogValue::from_log(bi.sign, lm);
}

std::pair<LogValue, LogValue> hille_hardy_1d_deriv_terms(double a, double u,
                                                         double b1, double b2) {
    const double r = std::exp(-u);
    const double omr = -std::expm1(-u);
    LogValue w_a = hille_hardy_1d(a, u, b1, b2);
    LogValue w_a1 = hille_hardy_1d(a + 1.0, u, b1, b2);
    LogValue t1 = scale_exp(-w_a, std::log(r / omr));
    LogValue t2 = scale_exp(w_a1, std::log(r * b2 / (omr * (a + 1.0))));
    return {t1, t2};
}

namespace {

void map_points(HeatVariant variant, const std::vector<double>& x,
                std::vector<double>& b) {
    b.resize(x.size());
    if (variant == HeatVariant::W) {
        b = x;
    } else {
        for (size_t i = 0; i < x.size(); ++i) b[i] = x[i] * x[i];
    }
}

} // namespace

LogValue heat_kernel(HeatVariant variant, const AlphaIndex& alpha, double t,
                     const std::vector<double>& x, const std::vector<double>& y) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t <= 0");
    if (static_cast<int>(x.size()) != alpha.dim() || x.size() != y.size())
        throw std::invalid_argument("heat_kernel: dimension mismatch");
    double u = t;
    double log_pref = 0.0;
    if (variant == HeatVariant::WDelta) {
        u = 2.0 * t;
        log_pref = -t * (alpha.sum_alpha() + alpha.dim());
    }
    std::vector<double> bx, by;
    map_points(variant, x, bx);
    map_points(variant, y, by);
    LogValue k = LogValue::one();
    for (int i = 0; i < alpha.dim(); ++i)
        k *= hille_hardy_1d(alpha.alpha[i], u, bx[i], by[i]);
    return scale_exp(k, log_pref);
}

double poisson_kernel(HeatVariant variant, const AlphaIndex& alpha, double t,
                      const std::vector<double>& x, const std::vector<double>& y) {
    if (!(t > 0.0)) throw std::invalid_argument("poisson_kernel: t <= 0");
    const double h = 0.1;
    const double s_lo = -70.0, s_hi = 6.6;
    double acc = 0.0;
    for (double s = s_lo; s <= s_hi + 1e-12; s += h) {
        double v = std::exp(s);
        double u = t * t / (4.0 * v);
        if (u < kSmallTimeClamp) continue;  // kernel ~ delta; no off-diagonal mass
        LogValue k = heat_kernel(variant, alpha, u, x, y);
        acc += k.sign * std::exp(k.log_mag - v + 0.5 * s);
    }
    return acc * h / std::sqrt(M_PI);
}

SemigroupEngine::SemigroupEngine(GridPtr grid, HeatVariant variant)
    : grid_(std::move(grid)), variant_(variant) {
    if (variant_ == HeatVariant::W) {
        if (grid_->kind() != MeasureKind::MuAlpha)
            throw std::invalid_argument("SemigroupEngine: W variant needs a mu_alpha grid");
    } else {
        if (grid_->kind() != MeasureKind::NuAlpha)
            throw std::invalid_argument("SemigroupEngine: hat/delta variants need a nu_alpha grid");
    }
}

void SemigroupEngine::map_time(double t, double& u, double& log_prefactor) const {
    if (variant_ == HeatVariant::WDelta) {
        u = 2.0 * t;
        log_prefactor = -t * (grid_->alpha().sum_alpha() + grid_->dim());
    } else {
        u = t;
        log_prefactor = 0.0;
    }
}

std::vector<SemigroupEngine::AxisMatrix> SemigroupEngine::build_base_matrices(double u) const {
    std::vector<AxisMatrix> mats(grid_->dim());
    for (int ax = 0; ax < grid_->dim(); ++ax) {
        const auto& b = grid_->axis_base_nodes(ax);
        const auto& w = grid_->axis_weights(ax);
        const int n = static_cast<int>(b.size());
        const double a = grid_->alpha().alpha[ax];
        AxisMatrix m(static_cast<size_t>(n) * n);
        for (int r = 0; r < n; ++r) {
            for (int c = r; c < n; ++c) {
                LogValue k = hille_hardy_1d(a, u, b[r], b[c]);
                m[static_cast<size_t>(r) * n + c] = k.sign * std::exp(k.log_mag + std::log(w[c]));
                if (c != r)
                    m[static_cast<size_t>(c) * n + r] =
                        k.sign * std::exp(k.log_mag + std::log(w[r]));
            }
        }
        mats[ax] = std::move(m);
    }
    return mats;
}

const std::vector<SemigroupEngine::AxisMatrix>& SemigroupEngine::base_matrices(double u) const {
    auto it = exact_cache_.find(u);
    if (it == exact_cache_.end())
        it = exact_cache_.emplace(u, build_base_matrices(u)).first;
    return it->second;
}

void SemigroupEngine::tensor_apply(const std::vector<AxisMatrix>& mats,
                                   const std::vector<std::complex<double>>& in,
                                   std::vector<std::complex<double>>& out) const {
    const int n = grid_->dim();
    std::vector<std::complex<double>> cur = in;
    std::vector<std::complex<double>> next(in.size());
    // contract one axis at a time; row-major layout, axis n-1 contiguous
    int stride_after = 1;  // product of sizes of axes > ax
    for (int ax = n - 1; ax >= 0; --ax) {
        const int sz = grid_->axis_size(ax);
        const int inner = stride_after;
        const int outer = static_cast<int>(in.size()) / (sz * inner);
        const AxisMatrix& m = mats[ax];
        for (int o = 0; o < outer; ++o) {
            for (int i = 0; i < inner; ++i) {
                const std::complex<double>* src =
                    cur.data() + static_cast<size_t>(o) * sz * inner + i;
                std::complex<double>* dst =
                    next.data() + static_cast<size_t>(o) * sz * inner + i;
                for (int r = 0; r < sz; ++r) {
                    std::complex<double> acc = 0.0;
                    const double* row = m.data() + static_cast<size_t>(r) * sz;
                    for (int c = 0; c < sz; ++c)
                        acc += row[c] * src[static_cast<size_t>(c) * inner];
                    dst[static_cast<size_t>(r) * inner] = acc;
                }
            }
        }
        cur.swap(next);
        stride_after *= sz;
    }
    out = std::move(cur);
}

GridFunction SemigroupEngine::apply_heat(const GridFunction& f, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("apply_heat: t <= 0");
    if (!f.grid->same_layout(*grid_))
        throw std::invalid_argument("apply_heat: measure/grid mismatch");
    if (t < kSmallTimeClamp) {
        ++small_time_clamps_;
        return f;
    }
    double u, log_pref;
    map_time(t, u, log_pref);
    GridFunction out(grid_);
    tensor_apply(base_matrices(u), f.values, out.values);
    if (log_pref != 0.0) {
        double p = std::exp(log_pref);
        for (auto& v : out.values) v *= p;
    }
    return out;
}

const ThetaLadder& SemigroupEngine::theta_ladder() const {
    if (ladder_.count == 0) {
        ladder_.lo = std::log(kSmallTimeClamp);
        ladder_.h = 0.05;
        double hi = std::log(60.0);
        ladder_.count = static_cast<int>(std::ceil((hi - ladder_.lo) / ladder_.h)) + 1;
    }
    return ladder_;
}

std::shared_ptr<HeatFunctionCache> SemigroupEngine::make_heat_cache(const GridFunction& f) const {
    if (!f.grid->same_layout(*grid_))
        throw std::invalid_argument("make_heat_cache: measure/grid mismatch");
    const ThetaLadder& lad = theta_ladder();
    if (ladder_matrices_.empty()) {
        ladder_matrices_.resize(lad.count);
        for (int i = 0; i < lad.count; ++i)
            ladder_matrices_[i] = build_base_matrices(std::exp(lad.theta(i)));
    }
    auto cache = std::make_shared<HeatFunctionCache>();
    cache->ladder_ = lad;
    cache->node_count_ = grid_->size();
    cache->samples_.resize(lad.count);
    for (int i = 0; i < lad.count; ++i)
        tensor_apply(ladder_matrices_[i], f.values, cache->samples_[i]);
    // u below the clamp returns f itself
    cache->samples_.insert(cache->samples_.begin(), f.values);
    return cache;
}

LagrangeStencil lagrange_stencil(const ThetaLadder& ladder, double theta) {
    LagrangeStencil st;
    int i0 = static_cast<int>(std::floor((theta - ladder.lo) / ladder.h)) - 3;
    i0 = std::max(0, std::min(i0, ladder.count - 8));
    st.start = i0;
    const double s = (theta - ladder.theta(i0)) / ladder.h;  // in node units
    for (int j = 0; j < 8; ++j) {
        double num = 1.0, den = 1.0;
        for (int l = 0; l < 8; ++l) {
            if (l == j) continue;
            num *= s - l;
            den *= static_cast<double>(j - l);
        }
        st.w[j] = num / den;
    }
    return st;
}

void HeatFunctionCache::apply_into(double u, std::vector<std::complex<double>>& out) const {
    out.assign(node_count_, {0.0, 0.0});
    if (u < kSmallTimeClamp) {
        ++clamps_;
        out = samples_[0];  // identity below the clamp
        return;
    }
    const double theta_hi = ladder_.theta(ladder_.count - 1);
    double theta = std::log(u);
    if (theta >= theta_hi) {
        out = samples_.back();
        return;
    }
    LagrangeStencil st = lagrange_stencil(ladder_, theta);
    for (int j = 0; j < 8; ++j) {
        const auto& s = samples_[st.start + j + 1];  // slot 0 is the identity sample
        const double w = st.w[j];
        for (int i = 0; i < node_count_; ++i) out[i] += w * s[i];
    }
}

std::vector<std::complex<double>> HeatFunctionCache::apply(double u) const {
    std::vector<std::complex<double>> out;
    apply_into(u, out);
    return out;
}

void SemigroupEngine::apply_poisson_cached(const HeatFunctionCache& cache, double t,
                                           std::vector<std::complex<double>>& out) const {
    if (!(t > 0.0)) throw std::invalid_argument("apply_poisson: t <= 0");
    const double h = 0.1, s_lo = -70.0, s_hi = 6.6;
    out.assign(grid_->size(), {0.0, 0.0});
    std::vector<std::complex<double>> tmp;
    const bool delta = variant_ == HeatVariant::WDelta;
    const double gap = grid_->alpha().sum_alpha() + grid_->dim();
    for (double s = s_lo; s <= s_hi + 1e-12; s += h) {
        const double v = std::exp(s);
        double th = t * t / (4.0 * v);         // time in the caller's clock
        double u = delta ? 2.0 * th : th;      // base clock
        cache.apply_into(u, tmp);
        double c = std::exp(-v + 0.5 * s + (delta ? -th * gap : 0.0));
        for (size_t i = 0; i < out.size(); ++i) out[i] += c * tmp[i];
    }
    const double c = h / std::sqrt(M_PI);
    for (auto& v : out) v *= c;
}

GridFunction SemigroupEngine::apply_poisson(const GridFunction& f, double t) const {
    auto cache = make_heat_cache(f);
    GridFunction out(grid_);
    apply_poisson_cached(*cache, t, out.values);
    return out;
}

GridFunction SemigroupEngine::eigenfunction(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != grid_->dim())
        throw std::invalid_argument("eigenfunction: index dimension mismatch");
    GridFunction f(grid_);
    std::vector<int> idx;
    for (int i = 0; i < grid_->size(); ++i) {
        grid_->decode(i, idx);
        double v = 1.0;
        for (int ax = 0; ax < grid_->dim(); ++ax)
            v *= laguerre_poly_normalized(k[ax], grid_->alpha().alpha[ax],
                                          grid_->axis_base_nodes(ax)[idx[ax]]);
        f.values[i] = v;
    }
    return f;
}

double SemigroupEngine::eigenvalue_heat(const std::vector<int>& k) const {
    if (variant_ == HeatVariant::WDelta) return grid_->alpha().lambda_delta(k);
    return AlphaIndex::lambda(k);
}

SpectralResult SemigroupEngine::spectral_apply(const GridFunction& f,
                                               const SpectralMultiplier& multiplier,
                                               int K) const {
    if (!f.grid->same_layout(*grid_))
        throw std::invalid_argument("spectral_apply: measure/grid mismatch");
    if (K < 0) throw std::invalid_argument("spectral_apply: K < 0");
    const int n = grid_->dim();
    // per-axis tables of the orthonormal polynomials at the base nodes
    std::vector<std::vector<std::vector<double>>> basis(n);
    for (int ax = 0; ax < n; ++ax) {
        basis[ax].resize(K + 1);
        const auto& b = grid_->axis_base_nodes(ax);
        for (int k = 0; k <= K; ++k) {
            basis[ax][k].resize(b.size());
            for (size_t j = 0; j < b.size(); ++j)
                basis[ax][k][j] =
                    laguerre_poly_normalized(k, grid_->alpha().alpha[ax], b[j]);
        }
    }
    const int total_modes = static_cast<int>(std::pow(K + 1.0, n));
    SpectralResult res;
    res.g = GridFunction(grid_);
    std::vector<int> kidx(n), xidx;
    for (int mode = 0; mode < total_modes; ++mode) {
        int mm = mode;
        for (int ax = n - 1; ax >= 0; --ax) {
            kidx[ax] = mm % (K + 1);
            mm /= (K + 1);
        }
        std::complex<double> coeff = 0.0;
        for (int i = 0; i < grid_->size(); ++i) {
            grid_->decode(i, xidx);
            double bp = 1.0;
            for (int ax = 0; ax < n; ++ax) bp *= basis[ax][kidx[ax]][xidx[ax]];
            coeff += f.grid->weight(i) * f.values[i] * bp;
        }
        bool boundary = false;
        for (int ax = 0; ax < n; ++ax) boundary |= (kidx[ax] == K);
        if (boundary) res.tail_coeff_bound = std::max(res.tail_coeff_bound, std::abs(coeff));
        std::complex<double> m = multiplier(kidx);
        if (m == std::complex<double>(0.0, 0.0)) continue;
        for (int i = 0; i < grid_->size(); ++i) {
            grid_->decode(i, xidx);
            double bp = 1.0;
            for (int ax = 0; ax < n; ++ax) bp *= basis[ax][kidx[ax]][xidx[ax]];
            res.g.values[i] += m * coeff * bp;
        }
    }
    return res;
}

} // namespace lagvar
