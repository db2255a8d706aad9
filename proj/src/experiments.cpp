#include "lagvar/experiments.hpp"

#include "lagvar/riesz.hpp"
#include "lagvar/rng.hpp"
#include "lagvar/semigroup.hpp"
#include "lagvar/special.hpp"
#include "lagvar/varops.hpp"
#include "lagvar/weyl.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace lagvar {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kCaveat = "empirical lower bound / stability check";

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_riesz(ExperimentOp op) {
    return op == ExperimentOp::VarRiesz || op == ExperimentOp::OscRiesz
           || op == ExperimentOp::JumpRiesz;
}

bool is_jump(ExperimentOp op) {
    return op == ExperimentOp::JumpPoisson || op == ExperimentOp::JumpRiesz;
}

std::vector<double> default_jump_ladder() {
    std::vector<double> l;
    for (int j = -7; j <= -2; ++j) l.push_back(std::ldexp(1.0, j));
    return l;
}

} // namespace

const char* to_string(ExperimentOp op) {
    switch (op) {
        case ExperimentOp::VarPoisson: return "var_poisson";
        case ExperimentOp::OscPoisson: return "osc_poisson";
        case ExperimentOp::JumpPoisson: return "jump_poisson";
        case ExperimentOp::SvarPoisson: return "svar_poisson";
        case ExperimentOp::GFunc: return "gfunc";
        case ExperimentOp::VarRiesz: return "var_riesz";
        case ExperimentOp::OscRiesz: return "osc_riesz";
        case ExperimentOp::JumpRiesz: return "jump_riesz";
    }
    return "?";
}

const char* to_string(EnsembleKind e) {
    switch (e) {
        case EnsembleKind::Eigen: return "eigen";
        case EnsembleKind::RandomPoly: return "random_poly";
        case EnsembleKind::NearAtom: return "near_atom";
    }
    return "?";
}

ExperimentOp experiment_op_from_string(const std::string& s) {
    for (auto op : {ExperimentOp::VarPoisson, ExperimentOp::OscPoisson,
                    ExperimentOp::JumpPoisson, ExperimentOp::SvarPoisson,
                    ExperimentOp::GFunc, ExperimentOp::VarRiesz, ExperimentOp::OscRiesz,
                    ExperimentOp::JumpRiesz})
        if (s == to_string(op)) return op;
    throw std::invalid_argument("unknown experiment operator: " + s);
}

EnsembleKind ensemble_from_string(const std::string& s) {
    for (auto e : {EnsembleKind::Eigen, EnsembleKind::RandomPoly, EnsembleKind::NearAtom})
        if (s == to_string(e)) return e;
    throw std::invalid_argument("unknown ensemble: " + s);
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["alpha"] = alpha;
    j["p_list"] = p_list;
    j["beta"] = beta;
    j["rho"] = rho;
    j["op"] = lagvar::to_string(op);
    j["ensemble"] = lagvar::to_string(ensemble);
    j["picture"] = picture == Picture::Mu ? "mu" : "nu";
    j["grid_nodes"] = grid_nodes;
    j["t_lo"] = t_lo;
    j["t_hi"] = t_hi;
    j["n_t"] = n_t;
    j["eps_cap"] = eps_cap;
    j["riesz_axis"] = riesz_axis;
    j["ensemble_size"] = ensemble_size;
    j["lambda_ladder"] = lambda_ladder;
    j["seed"] = seed;
    j["refine_check"] = refine_check;
    j["out_path"] = out_path;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    if (j.contains("alpha")) c.alpha = j["alpha"].get<std::vector<double>>();
    if (j.contains("p_list")) c.p_list = j["p_list"].get<std::vector<double>>();
    if (j.contains("beta")) c.beta = j["beta"].get<double>();
    if (j.contains("rho")) c.rho = j["rho"].get<double>();
    if (j.contains("op")) c.op = experiment_op_from_string(j["op"].get<std::string>());
    if (j.contains("ensemble"))
        c.ensemble = ensemble_from_string(j["ensemble"].get<std::string>());
    if (j.contains("picture"))
        c.picture = j["picture"].get<std::string>() == "mu" ? Picture::Mu : Picture::Nu;
    if (j.contains("grid_nodes")) c.grid_nodes = j["grid_nodes"].get<int>();
    if (j.contains("t_lo")) c.t_lo = j["t_lo"].get<double>();
    if (j.contains("t_hi")) c.t_hi = j["t_hi"].get<double>();
    if (j.contains("n_t")) c.n_t = j["n_t"].get<int>();
    if (j.contains("eps_cap")) c.eps_cap = j["eps_cap"].get<int>();
    if (j.contains("riesz_axis")) c.riesz_axis = j["riesz_axis"].get<int>();
    if (j.contains("ensemble_size")) c.ensemble_size = j["ensemble_size"].get<int>();
    if (j.contains("lambda_ladder"))
        c.lambda_ladder = j["lambda_ladder"].get<std::vector<double>>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("refine_check")) c.refine_check = j["refine_check"].get<bool>();
    if (j.contains("out_path")) c.out_path = j["out_path"].get<std::string>();
    return c;
}

std::vector<std::pair<std::string, GridFunction>> make_ensemble(
    const ExperimentConfig& cfg, const GridPtr& grid) {
    const int n = grid->dim();
    std::vector<std::pair<std::string, GridFunction>> out;
    auto eigenfn = [&](const std::vector<int>& k) {
        GridFunction f(grid);
        std::vector<int> idx;
        for (int i = 0; i < grid->size(); ++i) {
            grid->decode(i, idx);
            double v = 1.0;
            for (int ax = 0; ax < n; ++ax)
                v *= laguerre_poly_normalized(k[ax], grid->alpha().alpha[ax],
                                              grid->axis_base_nodes(ax)[idx[ax]]);
            f.values[i] = v;
        }
        return f;
    };
    switch (cfg.ensemble) {
        case EnsembleKind::Eigen: {
            if (n == 1) {
                for (int k = 0; k <= 7; ++k)
                    out.emplace_back("eigen:k=" + std::to_string(k),
                                     eigenfn(std::vector<int>{k}));
            } else {
                for (int k1 = 0; k1 <= 3; ++k1)
                    for (int k2 = 0; k1 + k2 <= 3; ++k2)
                        out.emplace_back("eigen:k=" + std::to_string(k1) + ","
                                             + std::to_string(k2),
                                         eigenfn(std::vector<int>{k1, k2}));
            }
            break;
        }
        case EnsembleKind::RandomPoly: {
            // modes with lambda_k = sum k_i <= 12
            std::vector<std::vector<int>> modes;
            if (n == 1) {
                for (int k = 0; k <= 12; ++k) modes.push_back({k});
            } else {
                for (int k1 = 0; k1 <= 12; ++k1)
                    for (int k2 = 0; k1 + k2 <= 12; ++k2) modes.push_back({k1, k2});
            }
            Rng rng(cfg.seed);
            for (int m = 0; m < cfg.ensemble_size; ++m) {
                GridFunction f(grid);
                for (const auto& k : modes) {
                    double c = rng.gaussian();
                    GridFunction e = eigenfn(k);
                    for (int i = 0; i < f.size(); ++i) f.values[i] += c * e.values[i];
                }
                out.emplace_back("poly:" + std::to_string(m), std::move(f));
            }
            break;
        }
        case EnsembleKind::NearAtom: {
            std::vector<double> centers1d{0.1, 1.0, 3.0};
            std::vector<std::vector<double>> centers;
            if (n == 1) {
                for (double c : centers1d) centers.push_back({c});
            } else {
                for (double c1 : centers1d)
                    for (double c2 : centers1d) centers.push_back({c1, c2});
            }
            for (size_t ci = 0; ci < centers.size(); ++ci) {
                for (int j = 0; j <= 3; ++j) {
                    const double w = std::ldexp(1.0, -j);
                    GridFunction f(grid);
                    for (int i = 0; i < grid->size(); ++i) {
                        auto x = grid->node(i);
                        // nu-picture coordinates; the mu picture pulls back
                        if (grid->kind() == MeasureKind::MuAlpha)
                            for (auto& v : x) v = std::sqrt(v);
                        double d2 = 0.0;
                        for (int ax = 0; ax < n; ++ax)
                            d2 += (x[ax] - centers[ci][ax]) * (x[ax] - centers[ci][ax]);
                        f.values[i] = std::exp(-d2 / (2.0 * w * w));
                    }
                    double l1 = lp_norm(f, 1.0);
                    for (auto& v : f.values) v /= l1;
                    std::string label = "atom:c=";
                    for (int ax = 0; ax < n; ++ax)
                        label += (ax ? "," : "") + fmt17(centers[ci][ax]);
                    label += ":j=" + std::to_string(j);
                    out.emplace_back(label, std::move(f));
                    out.back().second.values.shrink_to_fit();
                }
            }
            break;
        }
    }
    return out;
}

namespace {

struct OpContext {
    GridPtr grid;
    std::unique_ptr<SemigroupEngine> engine;
    std::unique_ptr<RieszOperator> riesz;
    std::vector<double> eps_grid;
};

OpContext make_context(const ExperimentConfig& cfg) {
    OpContext ctx;
    AlphaIndex alpha(cfg.alpha);
    if (is_riesz(cfg.op)) {
        if (cfg.picture == Picture::Mu)
            throw std::invalid_argument("riesz operators live on the nu_alpha measure");
        ctx.grid = QuadGrid::make_nu(alpha, cfg.grid_nodes);
        ctx.riesz = std::make_unique<RieszOperator>(ctx.grid, cfg.riesz_axis);
        ctx.eps_grid = ctx.riesz->default_eps_grid(cfg.eps_cap, cfg.seed);
    } else if (cfg.picture == Picture::Mu) {
        ctx.grid = QuadGrid::make_mu(alpha, cfg.grid_nodes);
        ctx.engine = std::make_unique<SemigroupEngine>(ctx.grid, HeatVariant::W);
    } else {
        ctx.grid = QuadGrid::make_nu(alpha, cfg.grid_nodes);
        ctx.engine = std::make_unique<SemigroupEngine>(ctx.grid, HeatVariant::WHat);
    }
    return ctx;
}

// T f as a nonnegative grid function for the norm/weak sweeps; jump ops are
// handled per lambda by the callers.
GridFunction apply_functional(const ExperimentConfig& cfg, const OpContext& ctx,
                              const GridFunction& f) {
    if (cfg.op == ExperimentOp::GFunc)
        return g_function(*ctx.engine, f, cfg.beta, cfg.t_lo, cfg.t_hi, cfg.n_t).g;
    Trajectory traj;
    std::vector<double> ladder;
    if (is_riesz(cfg.op)) {
        traj = ctx.riesz->truncation_trajectory(f, ctx.eps_grid);
        ladder = dyadic_ladder_in(ctx.eps_grid.back(), ctx.eps_grid.front());
    } else {
        traj = weyl_poisson_trajectory(*ctx.engine, f, WeylOrder::make(cfg.beta),
                                       TimeGrid::geometric(cfg.t_lo, cfg.t_hi, cfg.n_t));
        ladder = dyadic_ladder_in(cfg.t_lo, cfg.t_hi);
    }
    GridFunction out(ctx.grid);
    std::vector<std::complex<double>> slice;
    for (int node = 0; node < ctx.grid->size(); ++node) {
        slice = traj.node_slice(node);
        double v = 0.0;
        switch (cfg.op) {
            case ExperimentOp::VarPoisson:
            case ExperimentOp::VarRiesz:
                v = rho_variation(slice, cfg.rho);
                break;
            case ExperimentOp::OscPoisson:
            case ExperimentOp::OscRiesz:
                v = oscillation(traj.params, slice, ladder);
                break;
            case ExperimentOp::SvarPoisson:
                v = short_variation(traj.params, slice);
                break;
            default:
                throw std::logic_error("apply_functional: jump handled elsewhere");
        }
        out.values[node] = v;
    }
    return out;
}

json result_to_json_impl(const ExperimentResult& r, bool with_volatile) {
    json j;
    j["op"] = r.op;
    j["config"] = json::parse(r.config_json);
    j["config_hash"] = r.config_hash;
    j["library_version"] = r.library_version;
    j["caveat"] = r.caveat;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr;
        jr["label"] = row.label;
        jr["input_l1"] = row.input_l1;
        json nr = json::object();
        for (auto& [p, v] : row.norm_ratio) nr[fmt17(p)] = v;
        jr["norm_ratio"] = nr;
        json wr = json::object();
        for (auto& [l, v] : row.weak_ratio) wr[fmt17(l)] = v;
        jr["weak_ratio"] = wr;
        json jj = json::object();
        for (auto& [l, m] : row.jump_ratio) {
            json inner = json::object();
            for (auto& [p, v] : m) inner[fmt17(p)] = v;
            jj[fmt17(l)] = inner;
        }
        jr["jump_ratio"] = jj;
        if (row.width_level >= 0) jr["width_level"] = row.width_level;
        rows.push_back(std::move(jr));
    }
    j["rows"] = rows;
    json sm = json::object();
    for (auto& [p, v] : r.summary_max_ratio) sm[fmt17(p)] = v;
    j["summary_max_ratio"] = sm;
    json sw = json::object();
    for (auto& [w, v] : r.summary_weak_by_width) sw[fmt17(w)] = v;
    j["summary_weak_by_width"] = sw;
    json sj = json::object();
    for (auto& [l, m] : r.summary_jump) {
        json inner = json::object();
        for (auto& [p, v] : m) inner[fmt17(p)] = v;
        sj[fmt17(l)] = inner;
    }
    j["summary_jump"] = sj;
    j["pass"] = r.pass;
    if (with_volatile) {
        j["result_hash"] = r.result_hash;
        j["timestamp"] = r.timestamp;
    }
    return j;
}

void finalize(ExperimentResult& r) {
    std::string stable = result_to_json_impl(r, false).dump();
    r.result_hash = fnv1a64(stable.data(), stable.size());
    char buf[64];
    std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    r.timestamp = buf;
}

ExperimentResult make_base_result(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.op = to_string(cfg.op);
    r.config_json = cfg.to_json();
    r.config_hash = fnv1a64(r.config_json.data(), r.config_json.size());
    r.library_version = kVersion;
    r.caveat = kCaveat;
    return r;
}

std::map<double, double> member_ratios(const ExperimentConfig& cfg, const OpContext& ctx,
                                       const GridFunction& f, const GridFunction& tf) {
    std::map<double, double> out;
    for (double p : cfg.p_list) {
        double nf = lp_norm(f, p);
        double ntf = lp_norm(tf, p);
        out[p] = nf > 0.0 ? ntf / nf : 0.0;
    }
    return out;
}

} // namespace

std::string ExperimentResult::to_json() const {
    return result_to_json_impl(*this, true).dump(2);
}

ExperimentResult estimate_lp_norm(const ExperimentConfig& cfg) {
    OpContext ctx = make_context(cfg);
    auto members = make_ensemble(cfg, ctx.grid);
    ExperimentResult res = make_base_result(cfg);
    std::vector<double> ladder =
        cfg.lambda_ladder.empty() ? default_jump_ladder() : cfg.lambda_ladder;
    for (auto& [label, f] : members) {
        MemberRow row;
        row.label = label;
        row.input_l1 = lp_norm(f, 1.0);
        if (is_jump(cfg.op)) {
            Trajectory traj;
            if (is_riesz(cfg.op)) {
                traj = ctx.riesz->truncation_trajectory(f, ctx.eps_grid);
            } else {
                traj = weyl_poisson_trajectory(*ctx.engine, f, WeylOrder::make(cfg.beta),
                                               TimeGrid::geometric(cfg.t_lo, cfg.t_hi, cfg.n_t));
            }
            for (double lam : ladder) {
                GridFunction tf(ctx.grid);
                std::vector<std::complex<double>> slice;
                for (int node = 0; node < ctx.grid->size(); ++node) {
                    slice = traj.node_slice(node);
                    int cnt = jump_count(traj.params, slice, lam);
                    tf.values[node] = lam * std::pow(static_cast<double>(cnt), 1.0 / cfg.rho);
                }
                row.jump_ratio[lam] = member_ratios(cfg, ctx, f, tf);
                for (auto& [p, v] : row.jump_ratio[lam]) {
                    auto& slot = res.summary_jump[lam][p];
                    slot = std::max(slot, v);
                }
            }
        } else {
            GridFunction tf = apply_functional(cfg, ctx, f);
            row.norm_ratio = member_ratios(cfg, ctx, f, tf);
            for (auto& [p, v] : row.norm_ratio) {
                auto& slot = res.summary_max_ratio[p];
                slot = std::max(slot, v);
            }
        }
        res.rows.push_back(std::move(row));
    }
    if (cfg.refine_check && !is_jump(cfg.op)) {
        ExperimentConfig fine = cfg;
        fine.refine_check = false;
        fine.grid_nodes = cfg.grid_nodes * 2;
        fine.n_t = cfg.n_t * 2;
        ExperimentResult fres = estimate_lp_norm(fine);
        for (auto& [p, v] : res.summary_max_ratio) {
            double fv = fres.summary_max_ratio.at(p);
            if (fv > 1.10 * v + 1e-12) res.pass = false;
        }
    }
    finalize(res);
    return res;
}

ExperimentResult weak_11_sweep(const ExperimentConfig& cfg) {
    if (cfg.ensemble != EnsembleKind::NearAtom)
        throw std::invalid_argument("weak_11_sweep: ensemble must be near_atom");
    OpContext ctx = make_context(cfg);
    auto members = make_ensemble(cfg, ctx.grid);
    ExperimentResult res = make_base_result(cfg);
    auto ladder = dyadic_lambda_ladder();
    for (auto& [label, f] : members) {
        MemberRow row;
        row.label = label;
        row.input_l1 = lp_norm(f, 1.0);
        auto jpos = label.rfind(":j=");
        row.width_level = std::stoi(label.substr(jpos + 3));
        GridFunction tf = apply_functional(cfg, ctx, f);
        double best = 0.0;
        for (double lam : ladder) {
            double meas = 0.0;
            for (int i = 0; i < tf.size(); ++i)
                if (std::abs(tf.values[i]) > lam) meas += ctx.grid->weight(i);
            double ratio = lam * meas / row.input_l1;
            row.weak_ratio[lam] = ratio;
            best = std::max(best, ratio);
        }
        auto& slot = res.summary_weak_by_width[row.width_level];
        slot = std::max(slot, best);
        res.rows.push_back(std::move(row));
    }
    // no blow-up: each width at most 1.5x the previous
    double prev = -1.0;
    for (auto& [w, v] : res.summary_weak_by_width) {
        if (prev >= 0.0 && v > 1.5 * prev) res.pass = false;
        prev = v;
    }
    finalize(res);
    return res;
}

ExperimentResult jump_uniformity(const ExperimentConfig& cfg) {
    ExperimentConfig jc = cfg;
    if (jc.op != ExperimentOp::JumpPoisson && jc.op != ExperimentOp::JumpRiesz)
        throw std::invalid_argument("jump_uniformity: op must be a jump operator");
    if (jc.lambda_ladder.empty()) jc.lambda_ladder = default_jump_ladder();
    if (jc.lambda_ladder.size() < 6)
        throw std::invalid_argument("jump_uniformity: ladder needs >= 6 levels");
    ExperimentResult res = estimate_lp_norm(jc);
    for (double p : jc.p_list) {
        double lo = 1e300, hi = 0.0;
        for (auto& [lam, m] : res.summary_jump) {
            double v = m.at(p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi > 2.0 * lo) res.pass = false;
    }
    finalize(res);
    return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                                const std::string& format) {
    ExperimentResult res;
    if (cfg.ensemble == EnsembleKind::NearAtom
        && (cfg.op == ExperimentOp::VarPoisson || cfg.op == ExperimentOp::VarRiesz
            || cfg.op == ExperimentOp::OscPoisson || cfg.op == ExperimentOp::OscRiesz
            || cfg.op == ExperimentOp::SvarPoisson || cfg.op == ExperimentOp::GFunc)) {
        res = weak_11_sweep(cfg);
    } else if (is_jump(cfg.op)) {
        res = jump_uniformity(cfg);
    } else {
        res = estimate_lp_norm(cfg);
    }
    if (!out_dir.empty()) {
        std::string base = out_dir + "/" + res.op + "_result";
        {
            std::ofstream os(base + ".json");
            if (!os) throw std::runtime_error("cannot write " + base + ".json");
            os << res.to_json() << "\n";
        }
        if (format == "csv") {
            std::ofstream os(base + ".csv");
            os << "label,kind,key,p,value\n";
            for (const auto& row : res.rows) {
                for (auto& [p, v] : row.norm_ratio)
                    os << row.label << ",norm,," << fmt17(p) << "," << fmt17(v) << "\n";
                for (auto& [l, v] : row.weak_ratio)
                    os << row.label << ",weak," << fmt17(l) << ",," << fmt17(v) << "\n";
                for (auto& [l, m] : row.jump_ratio)
                    for (auto& [p, v] : m)
                        os << row.label << ",jump," << fmt17(l) << "," << fmt17(p) << ","
                           << fmt17(v) << "\n";
            }
        }
    }
    return res;
}

} // namespace lagvar
