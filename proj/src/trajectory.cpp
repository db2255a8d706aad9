#include "lagvar/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lagvar {

namespace {
std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    os << "node,param,re,im\n";
    for (int p = 0; p < traj.param_count(); ++p)
        for (int n = 0; n < traj.node_count; ++n)
            os << n << "," << fmt17(traj.params[p]) << "," << fmt17(traj.at(p, n).real())
               << "," << fmt17(traj.at(p, n).imag()) << "\n";
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    std::string line;
    std::getline(is, line);
    if (line != "node,param,re,im")
        throw std::runtime_error("not a lagvar trajectory csv: " + path);
    // param -> node -> value; params may arrive in any order
    std::map<double, std::map<int, std::complex<double>>> data;
    int max_node = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        int node = std::stoi(tok);
        std::getline(ls, tok, ',');
        double param = std::stod(tok);
        std::getline(ls, tok, ',');
        double re = std::stod(tok);
        std::getline(ls, tok, ',');
        double im = std::stod(tok);
        data[param][node] = {re, im};
        max_node = std::max(max_node, node);
    }
    if (data.empty()) throw std::runtime_error("empty trajectory csv: " + path);
    std::vector<double> params;
    for (auto it = data.rbegin(); it != data.rend(); ++it) params.push_back(it->first);
    Trajectory traj(params, max_node + 1);
    int p = 0;
    for (auto it = data.rbegin(); it != data.rend(); ++it, ++p) {
        if (static_cast<int>(it->second.size()) != max_node + 1)
            throw std::runtime_error("trajectory csv: ragged node set");
        for (auto& [node, v] : it->second) traj.at(p, node) = v;
    }
    return traj;
}

} // namespace lagvar
