#ifndef LAGVAR_ALPHA_INDEX_HPP
#define LAGVAR_ALPHA_INDEX_HPP

#include <numeric>
#include <stdexcept>
#include <vector>

namespace lagvar {

// Type multi-index alpha in (0,inf)^n together with the derived spectral data.
struct AlphaIndex {
    std::vector<double> alpha;

    AlphaIndex() = default;
    explicit AlphaIndex(std::vector<double> a) : alpha(std::move(a)) {
        if (alpha.empty()) throw std::invalid_argument("AlphaIndex: empty");
        for (double ai : alpha)
            if (!(ai > 0.0)) throw std::invalid_argument("AlphaIndex: alpha_i <= 0");
    }

    int dim() const { return static_cast<int>(alpha.size()); }

    double sum_alpha() const {
        return std::accumulate(alpha.begin(), alpha.end(), 0.0);
    }

    // Eigenvalue of the Laguerre operator on L_k: sum k_i.
    static double lambda(const std::vector<int>& k) {
        double s = 0.0;
        for (int ki : k) s += ki;
        return s;
    }

    // Eigenvalue in the Delta setting: 2 sum k_i + sum alpha_i + n.
    double lambda_delta(const std::vector<int>& k) const {
        return 2.0 * lambda(k) + sum_alpha() + dim();
    }
};

} // namespace lagvar

#endif
