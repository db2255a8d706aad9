#ifndef LAGVAR_MEASURE_HPP
#define LAGVAR_MEASURE_HPP

#include "lagvar/alpha_index.hpp"
#include "lagvar/quadrature.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace lagvar {

enum class MeasureKind {
    MuAlpha,    // prod x_i^{a_i} e^{-x_i} / Gamma(a_i+1) dx
    NuAlpha,    // 2^n prod x_i^{2a_i+1} e^{-x_i^2} / Gamma(a_i+1) dx
    MAlpha,     // e^{|x|^2} d nu_alpha = 2^n prod x_i^{2a_i+1}/Gamma(a_i+1) dx
    Lebesgue
};

// Tensor-product quadrature grid on (0,inf)^n adapted to one of the measures.
// Nu grids are Mu grids pushed through x -> sqrt(x); the original Mu nodes are
// kept so the square map stays exact at the discrete level.
class QuadGrid {
public:
    static std::shared_ptr<const QuadGrid> make_mu(const AlphaIndex& alpha,
                                                   int nodes_per_axis);
    static std::shared_ptr<const QuadGrid> make_nu(const AlphaIndex& alpha,
                                                   int nodes_per_axis);
    // Bounded-domain rules with the density folded into the weights; used for
    // the infinite-mass measures.
    static std::shared_ptr<const QuadGrid> make_m_alpha(const AlphaIndex& alpha,
                                                        double hi, int nodes_per_axis);
    static std::shared_ptr<const QuadGrid> make_lebesgue(int n, double hi,
                                                         int nodes_per_axis);

    MeasureKind kind() const { return kind_; }
    const AlphaIndex& alpha() const { return alpha_; }
    int dim() const { return n_; }
    int axis_size(int axis) const { return static_cast<int>(axis_nodes_[axis].size()); }
    int size() const { return total_; }

    const std::vector<double>& axis_nodes(int axis) const { return axis_nodes_[axis]; }
    const std::vector<double>& axis_weights(int axis) const { return axis_weights_[axis]; }
    // For Nu grids: the Mu node the axis node was transported from (node^2,
    // stored exactly).  For other kinds this equals axis_nodes.
    const std::vector<double>& axis_base_nodes(int axis) const { return axis_base_[axis]; }

    void decode(int flat, std::vector<int>& idx) const;
    std::vector<double> node(int flat) const;
    std::vector<double> base_node(int flat) const;
    double weight(int flat) const;

    double density(const std::vector<double>& x) const;
    double total_mass() const;

    bool same_layout(const QuadGrid& o) const;

    std::string describe() const;

private:
    QuadGrid() = default;
    MeasureKind kind_ = MeasureKind::MuAlpha;
    AlphaIndex alpha_;
    int n_ = 0;
    int total_ = 0;
    double domain_hi_ = 0.0;  // bounded-domain kinds only
    std::vector<std::vector<double>> axis_nodes_;
    std::vector<std::vector<double>> axis_weights_;
    std::vector<std::vector<double>> axis_base_;
};

using GridPtr = std::shared_ptr<const QuadGrid>;

struct GridFunction {
    GridPtr grid;
    std::vector<std::complex<double>> values;

    GridFunction() = default;
    explicit GridFunction(GridPtr g)
        : grid(std::move(g)), values(grid->size(), {0.0, 0.0}) {}
    GridFunction(GridPtr g, std::vector<std::complex<double>> v);

    int size() const { return static_cast<int>(values.size()); }
};

GridFunction grid_constant(const GridPtr& g, std::complex<double> c);

// (sum w_i |f_i|^p)^{1/p}; p = inf gives max |f_i|.  Rejects p < 1.
double lp_norm(const GridFunction& f, double p);

std::complex<double> integrate(const GridFunction& f);

// max over the given lambdas of lambda * measure{ |f| > lambda }.  A lower
// bound of the true weak-L1 quasinorm, which takes sup over all lambda > 0.
double weak_l1_quasinorm(const GridFunction& f, const std::vector<double>& lambdas);

// Default dyadic ladder 2^j, j = -20..20.
std::vector<double> dyadic_lambda_ladder();

struct BallMeasure {
    double value = 0.0;        // n=1: exact; n>=2: geometric mean of the boxes
    double inscribed = 0.0;
    double circumscribed = 0.0;
};

// m_alpha(B(x,r) intersect (0,inf)^n) from per-axis antiderivatives.
BallMeasure ball_measure_m_alpha(const std::vector<double>& x, double r,
                                 const AlphaIndex& alpha);

// (||f||_{L^q(mu)}, ||S_Psi f||_{L^q(nu)}) where (S_Psi f)(x) = f(x^2) on the
// transported grid.
std::pair<double, double> pushforward_isometry_check(const GridFunction& f, double q);

// CSV: header comment with grid metadata, then coords..., weight, re, im rows
// with 17 significant digits.
void write_gridfunction_csv(const GridFunction& f, const std::string& path);
GridFunction read_gridfunction_csv(const std::string& path);

} // namespace lagvar

#endif
