#ifndef LAGVAR_EXPERIMENTS_HPP
#define LAGVAR_EXPERIMENTS_HPP

#include "lagvar/measure.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lagvar {

enum class ExperimentOp {
    VarPoisson,
    OscPoisson,
    JumpPoisson,
    SvarPoisson,
    GFunc,
    VarRiesz,
    OscRiesz,
    JumpRiesz
};

enum class EnsembleKind { Eigen, RandomPoly, NearAtom };
enum class Picture { Mu, Nu };

const char* to_string(ExperimentOp op);
const char* to_string(EnsembleKind e);
ExperimentOp experiment_op_from_string(const std::string& s);
EnsembleKind ensemble_from_string(const std::string& s);

struct ExperimentConfig {
    std::vector<double> alpha{1.0};
    std::vector<double> p_list{1.0, 2.0};
    double beta = 1.0;
    double rho = 3.0;
    ExperimentOp op = ExperimentOp::VarPoisson;
    EnsembleKind ensemble = EnsembleKind::Eigen;
    Picture picture = Picture::Nu;
    int grid_nodes = 120;      // per axis
    double t_lo = 1e-3, t_hi = 20.0;
    int n_t = 160;
    int eps_cap = 4000;
    int riesz_axis = 1;
    int ensemble_size = 8;     // RandomPoly members
    std::vector<double> lambda_ladder;  // jump ops; default dyadic 2^-7..2^-2
    std::uint64_t seed = 1;
    bool refine_check = false;
    std::string out_path;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
};

struct MemberRow {
    std::string label;
    double input_l1 = 0.0;
    std::map<double, double> norm_ratio;    // p -> ||Tf||_p / ||f||_p
    std::map<double, double> weak_ratio;    // lambda -> lambda meas{>lambda}/||f||_1
    std::map<double, std::map<double, double>> jump_ratio;  // lambda -> p -> ratio
    int width_level = -1;                   // NearAtom bumps
};

struct ExperimentResult {
    std::string op;
    std::string config_json;
    std::uint64_t config_hash = 0;
    std::string library_version;
    std::string caveat;  // always "empirical lower bound / stability check"
    std::vector<MemberRow> rows;
    std::map<double, double> summary_max_ratio;             // p -> max over members
    std::map<double, double> summary_weak_by_width;         // width level -> max weak ratio
    std::map<double, std::map<double, double>> summary_jump;  // lambda -> p -> max
    bool pass = true;
    std::uint64_t result_hash = 0;  // over the dump without the timestamp
    std::string timestamp;

    std::string to_json() const;
};

// ensemble member generation (nu picture; the mu picture pulls the same
// values back through the square map)
std::vector<std::pair<std::string, GridFunction>> make_ensemble(
    const ExperimentConfig& cfg, const GridPtr& grid);

ExperimentResult estimate_lp_norm(const ExperimentConfig& cfg);
ExperimentResult weak_11_sweep(const ExperimentConfig& cfg);
ExperimentResult jump_uniformity(const ExperimentConfig& cfg);

// dispatch on cfg.op / sweep type; writes result JSON (and CSV rows when
// format == "csv") under out_dir when non-empty
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                const std::string& format);

} // namespace lagvar

#endif
