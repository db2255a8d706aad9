#ifndef LAGVAR_TRAJECTORY_HPP
#define LAGVAR_TRAJECTORY_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagvar {

// One complex value per (parameter, node), parameters strictly decreasing.
// Feeds every variational functional; for semigroups the parameter is t, for
// truncated singular integrals it is epsilon.
struct Trajectory {
    std::vector<double> params;
    int node_count = 0;
    std::vector<std::complex<double>> values;  // param-major

    Trajectory() = default;
    Trajectory(std::vector<double> p, int nodes)
        : params(std::move(p)), node_count(nodes),
          values(params.size() * nodes, {0.0, 0.0}) {
        for (size_t j = 1; j < params.size(); ++j)
            if (!(params[j] < params[j - 1]))
                throw std::invalid_argument("Trajectory: params not strictly decreasing");
        for (double p_ : params)
            if (!(p_ > 0.0)) throw std::invalid_argument("Trajectory: param <= 0");
    }

    int param_count() const { return static_cast<int>(params.size()); }

    std::complex<double>& at(int p, int node) {
        return values[static_cast<size_t>(p) * node_count + node];
    }
    std::complex<double> at(int p, int node) const {
        return values[static_cast<size_t>(p) * node_count + node];
    }

    std::vector<std::complex<double>> node_slice(int node) const {
        std::vector<std::complex<double>> s(params.size());
        for (int p = 0; p < param_count(); ++p) s[p] = at(p, node);
        return s;
    }
};

// CSV: node id, param, re, im.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

} // namespace lagvar

#endif
