#include "lagvar/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lagvar {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::MuAlpha: return "mu_alpha";
        case MeasureKind::NuAlpha: return "nu_alpha";
        case MeasureKind::MAlpha: return "m_alpha";
        case MeasureKind::Lebesgue: return "lebesgue";
    }
    return "?";
}

MeasureKind kind_from_name(const std::string& s) {
    if (s == "mu_alpha") return MeasureKind::MuAlpha;
    if (s == "nu_alpha") return MeasureKind::NuAlpha;
    if (s == "m_alpha") return MeasureKind::MAlpha;
    if (s == "lebesgue") return MeasureKind::Lebesgue;
    throw std::runtime_error("unknown measure kind: " + s);
}

} // namespace

std::shared_ptr<const QuadGrid> QuadGrid::make_mu(const AlphaIndex& alpha,
                                                  int nodes_per_axis) {
    auto g = std::shared_ptr<QuadGrid>(new QuadGrid());
    g->kind_ = MeasureKind::MuAlpha;
    g->alpha_ = alpha;
    g->n_ = alpha.dim();
    for (int i = 0; i < g->n_; ++i) {
        QuadRule r = gauss_laguerre(nodes_per_axis, alpha.alpha[i]);
        double norm = std::exp(-std::lgamma(alpha.alpha[i] + 1.0));
        for (double& w : r.weights) w *= norm;
        g->axis_nodes_.push_back(r.nodes);
        g->axis_weights_.push_back(std::move(r.weights));
        g->axis_base_.push_back(std::move(r.nodes));
    }
    g->total_ = 1;
    for (int i = 0; i < g->n_; ++i) g->total_ *= g->axis_size(i);
    return g;
}

std::shared_ptr<const QuadGrid> QuadGrid::make_nu(const AlphaIndex& alpha,
                                                  int nodes_per_axis) {
    auto mu = make_mu(alpha, nodes_per_axis);
    auto g = std::shared_ptr<QuadGrid>(new QuadGrid());
    g->kind_ = MeasureKind::NuAlpha;
    g->alpha_ = alpha;
    g->n_ = alpha.dim();
    for (int i = 0; i < g->n_; ++i) {
        std::vector<double> nodes(mu->axis_nodes(i).size());
        for (size_t j = 0; j < nodes.size(); ++j)
            nodes[j] = std::sqrt(mu->axis_nodes(i)[j]);
        g->axis_nodes_.push_back(std::move(nodes));
        g->axis_weights_.push_back(mu->axis_weights(i));
        g->axis_base_.push_back(mu->axis_nodes(i));
    }
    g->total_ = mu->size();
    return g;
}

std::shared_ptr<const QuadGrid> QuadGrid::make_m_alpha(const AlphaIndex& alpha,
                                                       double hi, int nodes_per_axis) {
    if (!(hi > 0.0)) throw std::invalid_argument("make_m_alpha: hi <= 0");
    auto g = std::shared_ptr<QuadGrid>(new QuadGrid());
    g->kind_ = MeasureKind::MAlpha;
    g->alpha_ = alpha;
    g->n_ = alpha.dim();
    g->domain_hi_ = hi;
    for (int i = 0; i < g->n_; ++i) {
        QuadRule r = gauss_legendre(nodes_per_axis, 0.0, hi);
        double c = 2.0 * std::exp(-std::lgamma(alpha.alpha[i] + 1.0));
        std::vector<double> w(r.weights.size());
        for (size_t j = 0; j < w.size(); ++j)
            w[j] = r.weights[j] * c * std::pow(r.nodes[j], 2.0 * alpha.alpha[i] + 1.0);
        g->axis_nodes_.push_back(r.nodes);
        g->axis_weights_.push_back(std::move(w));
        g->axis_base_.push_back(std::move(r.nodes));
    }
    g->total_ = 1;
    for (int i = 0; i < g->n_; ++i) g->total_ *= g->axis_size(i);
    return g;
}

std::shared_ptr<const QuadGrid> QuadGrid::make_lebesgue(int n, double hi,
                                                        int nodes_per_axis) {
    if (n < 1) throw std::invalid_argument("make_lebesgue: n < 1");
    if (!(hi > 0.0)) throw std::invalid_argument("make_lebesgue: hi <= 0");
    auto g = std::shared_ptr<QuadGrid>(new QuadGrid());
    g->kind_ = MeasureKind::Lebesgue;
    g->alpha_ = AlphaIndex(std::vector<double>(n, 1.0));
    g->n_ = n;
    g->domain_hi_ = hi;
    for (int i = 0; i < n; ++i) {
        QuadRule r = gauss_legendre(nodes_per_axis, 0.0, hi);
        g->axis_nodes_.push_back(r.nodes);
        g->axis_weights_.push_back(r.weights);
        g->axis_base_.push_back(std::move(r.nodes));
    }
    g->total_ = 1;
    for (int i = 0; i < n; ++i) g->total_ *= g->axis_size(i);
    return g;
}

void QuadGrid::decode(int flat, std::vector<int>& idx) const {
    idx.resize(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        int sz = axis_size(i);
        idx[i] = flat % sz;
        flat /= sz;
    }
}

std::vector<double> QuadGrid::node(int flat) const {
    std::vector<int> idx;
    decode(flat, idx);
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = axis_nodes_[i][idx[i]];
    return x;
}

std::vector<double> QuadGrid::base_node(int flat) const {
    std::vector<int> idx;
    decode(flat, idx);
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = axis_base_[i][idx[i]];
    return x;
}

double QuadGrid::weight(int flat) const {
    std::vector<int> idx;
    decode(flat, idx);
    double w = 1.0;
    for (int i = 0; i < n_; ++i) w *= axis_weights_[i][idx[i]];
    return w;
}

double QuadGrid::density(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("density: dimension mismatch");
    double d = 1.0;
    switch (kind_) {
        case MeasureKind::MuAlpha:
            for (int i = 0; i < n_; ++i)
                d *= std::exp(alpha_.alpha[i] * std::log(x[i]) - x[i]
                              - std::lgamma(alpha_.alpha[i] + 1.0));
            return d;
        case MeasureKind::NuAlpha:
            for (int i = 0; i < n_; ++i)
                d *= 2.0 * std::exp((2.0 * alpha_.alpha[i] + 1.0) * std::log(x[i])
                                    - x[i] * x[i] - std::lgamma(alpha_.alpha[i] + 1.0));
            return d;
        case MeasureKind::MAlpha:
            for (int i = 0; i < n_; ++i)
                d *= 2.0 * std::exp((2.0 * alpha_.alpha[i] + 1.0) * std::log(x[i])
                                    - std::lgamma(alpha_.alpha[i] + 1.0));
            return d;
        case MeasureKind::Lebesgue:
            return 1.0;
    }
    return d;
}

double QuadGrid::total_mass() const {
    double m = 1.0;
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (double w : axis_weights_[i]) s += w;
        m *= s;
    }
    return m;
}

bool QuadGrid::same_layout(const QuadGrid& o) const {
    if (kind_ != o.kind_ || n_ != o.n_ || total_ != o.total_) return false;
    for (int i = 0; i < n_; ++i)
        if (axis_nodes_[i] != o.axis_nodes_[i]) return false;
    return true;
}

std::string QuadGrid::describe() const {
    std::ostringstream os;
    os << kind_name(kind_) << " n=" << n_ << " alpha=";
    for (int i = 0; i < n_; ++i) os << (i ? "," : "") << fmt17(alpha_.alpha[i]);
    os << " axis_sizes=";
    for (int i = 0; i < n_; ++i) os << (i ? "," : "") << axis_size(i);
    if (kind_ == MeasureKind::MAlpha || kind_ == MeasureKind::Lebesgue)
        os << " hi=" << fmt17(domain_hi_);
    return os.str();
}

GridFunction::GridFunction(GridPtr g, std::vector<std::complex<double>> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid->size())
        throw std::invalid_argument("GridFunction: size mismatch");
}

GridFunction grid_constant(const GridPtr& g, std::complex<double> c) {
    GridFunction f(g);
    std::fill(f.values.begin(), f.values.end(), c);
    return f;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (auto v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p < 1");
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i)
        s += f.grid->weight(i) * std::pow(std::abs(f.values[i]), p);
    return std::pow(s, 1.0 / p);
}

std::complex<double> integrate(const GridFunction& f) {
    std::complex<double> s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.grid->weight(i) * f.values[i];
    return s;
}

double weak_l1_quasinorm(const GridFunction& f, const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw std::invalid_argument("weak_l1_quasinorm: no lambdas");
    double best = 0.0;
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw std::invalid_argument("weak_l1_quasinorm: lambda <= 0");
        double meas = 0.0;
        for (int i = 0; i < f.size(); ++i)
            if (std::abs(f.values[i]) > lam) meas += f.grid->weight(i);
        best = std::max(best, lam * meas);
    }
    return best;
}

std::vector<double> dyadic_lambda_ladder() {
    std::vector<double> l;
    for (int j = -20; j <= 20; ++j) l.push_back(std::ldexp(1.0, j));
    return l;
}

namespace {
// integral_{max(lo,0)}^{hi} 2 t^{2a+1}/Gamma(a+1) dt = (hi^{2a+2} - lo^{2a+2})/Gamma(a+2)
double m_alpha_interval(double lo, double hi, double a) {
    lo = std::max(lo, 0.0);
    if (hi <= lo) return 0.0;
    return (std::pow(hi, 2.0 * a + 2.0) - std::pow(lo, 2.0 * a + 2.0))
           * std::exp(-std::lgamma(a + 2.0));
}
} // namespace

BallMeasure ball_measure_m_alpha(const std::vector<double>& x, double r,
                                 const AlphaIndex& alpha) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_measure_m_alpha: r <= 0");
    if (static_cast<int>(x.size()) != alpha.dim())
        throw std::invalid_argument("ball_measure_m_alpha: dimension mismatch");
    const int n = alpha.dim();
    BallMeasure out;
    if (n == 1) {
        out.value = m_alpha_interval(x[0] - r, x[0] + r, alpha.alpha[0]);
        out.inscribed = out.circumscribed = out.value;
        return out;
    }
    const double rin = r / std::sqrt(static_cast<double>(n));
    double circ = 1.0, insc = 1.0;
    for (int i = 0; i < n; ++i) {
        circ *= m_alpha_interval(x[i] - r, x[i] + r, alpha.alpha[i]);
        insc *= m_alpha_interval(x[i] - rin, x[i] + rin, alpha.alpha[i]);
    }
    out.circumscribed = circ;
    out.inscribed = insc;
    out.value = std::sqrt(circ * insc);
    return out;
}

std::pair<double, double> pushforward_isometry_check(const GridFunction& f, double q) {
    if (f.grid->kind() != MeasureKind::MuAlpha)
        throw std::invalid_argument("pushforward_isometry_check: needs a mu_alpha grid");
    auto nu = QuadGrid::make_nu(f.grid->alpha(), f.grid->axis_size(0));
    if (nu->size() != f.grid->size())
        throw std::runtime_error("pushforward_isometry_check: grid mismatch");
    // S_Psi f at the transported node sqrt(a) is f(a): same value vector.
    GridFunction g(nu, f.values);
    return {lp_norm(f, q), lp_norm(g, q)};
}

void write_gridfunction_csv(const GridFunction& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    os << "# lagvar-gridfunction v1 " << f.grid->describe() << "\n";
    const int n = f.grid->dim();
    for (int i = 0; i < n; ++i) os << "x" << i + 1 << ",";
    os << "weight,re,im\n";
    for (int i = 0; i < f.size(); ++i) {
        auto x = f.grid->node(i);
        for (int d = 0; d < n; ++d) os << fmt17(x[d]) << ",";
        os << fmt17(f.grid->weight(i)) << "," << fmt17(f.values[i].real())
           << "," << fmt17(f.values[i].imag()) << "\n";
    }
}

GridFunction read_gridfunction_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    std::string header;
    std::getline(is, header);
    const std::string tag = "# lagvar-gridfunction v1 ";
    if (header.rfind(tag, 0) != 0)
        throw std::runtime_error("not a lagvar gridfunction csv: " + path);
    std::istringstream hs(header.substr(tag.size()));
    std::string kind_s, n_s, alpha_s, sizes_s, hi_s;
    hs >> kind_s >> n_s >> alpha_s >> sizes_s >> hi_s;
    auto strip = [](std::string s) {
        auto p = s.find('=');
        return p == std::string::npos ? s : s.substr(p + 1);
    };
    MeasureKind kind = kind_from_name(kind_s);
    int n = std::stoi(strip(n_s));
    std::vector<double> avec;
    {
        std::istringstream as(strip(alpha_s));
        std::string tok;
        while (std::getline(as, tok, ',')) avec.push_back(std::stod(tok));
    }
    int per_axis = 0;
    {
        std::istringstream ss(strip(sizes_s));
        std::string tok;
        std::getline(ss, tok, ',');
        per_axis = std::stoi(tok);
    }
    GridPtr grid;
    switch (kind) {
        case MeasureKind::MuAlpha: grid = QuadGrid::make_mu(AlphaIndex(avec), per_axis); break;
        case MeasureKind::NuAlpha: grid = QuadGrid::make_nu(AlphaIndex(avec), per_axis); break;
        case MeasureKind::MAlpha:
            grid = QuadGrid::make_m_alpha(AlphaIndex(avec), std::stod(strip(hi_s)), per_axis);
            break;
        case MeasureKind::Lebesgue:
            grid = QuadGrid::make_lebesgue(n, std::stod(strip(hi_s)), per_axis);
            break;
    }
    std::string line;
    std::getline(is, line);  // column header
    GridFunction f(grid);
    int row = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (row >= f.size()) throw std::runtime_error("csv has too many rows");
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(std::stod(tok));
        if (static_cast<int>(cols.size()) != n + 3)
            throw std::runtime_error("csv row has wrong arity");
        auto x = grid->node(row);
        for (int d = 0; d < n; ++d) {
            double ref = std::max(1.0, std::fabs(x[d]));
            if (std::fabs(cols[d] - x[d]) > 1e-9 * ref)
                throw std::runtime_error("csv node does not match canonical grid");
        }
        f.values[row] = {cols[n + 1], cols[n + 2]};
        ++row;
    }
    if (row != f.size()) throw std::runtime_error("csv has too few rows");
    return f;
}

} // namespace lagvar
