#include "lagvar.h"

#include "lagvar/experiments.hpp"
#include "lagvar/measure.hpp"
#include "lagvar/riesz.hpp"
#include "lagvar/semigroup.hpp"
#include "lagvar/trajectory.hpp"
#include "lagvar/varops.hpp"
#include "lagvar/weyl.hpp"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

using namespace lagvar;

namespace {

thread_local std::string g_error;

lv_status fail(lv_status code, const char* what) {
    g_error = what ? what : "";
    return code;
}

template <typename Fn>
lv_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(LV_ERR_USAGE, e.what());
    } catch (const std::domain_error& e) {
        return fail(LV_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LV_ERR_IO, e.what());
    }
}

AlphaIndex make_alpha(int n, const double* alpha) {
    if (n < 1 || !alpha) throw std::invalid_argument("alpha: null or empty");
    return AlphaIndex(std::vector<double>(alpha, alpha + n));
}

std::vector<double> to_vec(int n, const double* p) {
    if (!p) throw std::invalid_argument("null point");
    return std::vector<double>(p, p + n);
}

} // namespace

struct lv_grid {
    GridPtr grid;
};
struct lv_func {
    GridFunction f;
};
struct lv_traj {
    Trajectory t;
};

extern "C" {

const char* lv_version(void) { return "0.1.0"; }

const char* lv_last_error(void) { return g_error.c_str(); }

lv_status lv_grid_create(lv_measure measure, int n, const double* alpha,
                         int nodes_per_axis, lv_grid** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is null");
        AlphaIndex a = make_alpha(n, alpha);
        GridPtr g = measure == LV_MEASURE_MU ? QuadGrid::make_mu(a, nodes_per_axis)
                                             : QuadGrid::make_nu(a, nodes_per_axis);
        *out = new lv_grid{std::move(g)};
        return LV_OK;
    });
}

void lv_grid_destroy(lv_grid* g) { delete g; }

lv_status lv_grid_size(const lv_grid* g, int* out) {
    return guarded([&] {
        if (!g || !out) throw std::invalid_argument("null argument");
        *out = g->grid->size();
        return LV_OK;
    });
}

lv_status lv_grid_nodes(const lv_grid* g, double* coords) {
    return guarded([&] {
        if (!g || !coords) throw std::invalid_argument("null argument");
        const int n = g->grid->dim();
        for (int i = 0; i < g->grid->size(); ++i) {
            auto x = g->grid->node(i);
            std::memcpy(coords + static_cast<size_t>(i) * n, x.data(), n * sizeof(double));
        }
        return LV_OK;
    });
}

lv_status lv_grid_weights(const lv_grid* g, double* weights) {
    return guarded([&] {
        if (!g || !weights) throw std::invalid_argument("null argument");
        for (int i = 0; i < g->grid->size(); ++i) weights[i] = g->grid->weight(i);
        return LV_OK;
    });
}

lv_status lv_func_create(const lv_grid* g, const double* re, const double* im,
                         lv_func** out) {
    return guarded([&] {
        if (!g || !re || !out) throw std::invalid_argument("null argument");
        GridFunction f(g->grid);
        for (int i = 0; i < f.size(); ++i)
            f.values[i] = {re[i], im ? im[i] : 0.0};
        *out = new lv_func{std::move(f)};
        return LV_OK;
    });
}

lv_status lv_func_eigen(const lv_grid* g, const int* k, lv_func** out) {
    return guarded([&] {
        if (!g || !k || !out) throw std::invalid_argument("null argument");
        HeatVariant variant = g->grid->kind() == MeasureKind::MuAlpha ? HeatVariant::W
                                                                      : HeatVariant::WHat;
        SemigroupEngine eng(g->grid, variant);
        *out = new lv_func{eng.eigenfunction(
            std::vector<int>(k, k + g->grid->dim()))};
        return LV_OK;
    });
}

void lv_func_destroy(lv_func* f) { delete f; }

lv_status lv_func_size(const lv_func* f, int* out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        *out = f->f.size();
        return LV_OK;
    });
}

lv_status lv_func_values(const lv_func* f, double* re, double* im) {
    return guarded([&] {
        if (!f || !re) throw std::invalid_argument("null argument");
        for (int i = 0; i < f->f.size(); ++i) {
            re[i] = f->f.values[i].real();
            if (im) im[i] = f->f.values[i].imag();
        }
        return LV_OK;
    });
}

lv_status lv_func_write_csv(const lv_func* f, const char* path) {
    return guarded([&] {
        if (!f || !path) throw std::invalid_argument("null argument");
        write_gridfunction_csv(f->f, path);
        return LV_OK;
    });
}

lv_status lv_func_read_csv(const char* path, lv_func** out) {
    return guarded([&] {
        if (!path || !out) throw std::invalid_argument("null argument");
        *out = new lv_func{read_gridfunction_csv(path)};
        return LV_OK;
    });
}

lv_status lv_func_lp_norm(const lv_func* f, double p, double* out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        *out = lp_norm(f->f, p);
        return LV_OK;
    });
}

lv_status lv_heat_kernel(lv_heat_variant variant, int n, const double* alpha, double t,
                         const double* x, const double* y, int* sign, double* log_mag) {
    return guarded([&] {
        if (!sign || !log_mag) throw std::invalid_argument("null output");
        LogValue v = heat_kernel(static_cast<HeatVariant>(variant), make_alpha(n, alpha),
                                 t, to_vec(n, x), to_vec(n, y));
        *sign = v.sign;
        *log_mag = v.log_mag;
        return LV_OK;
    });
}

lv_status lv_poisson_kernel(lv_heat_variant variant, int n, const double* alpha, double t,
                            const double* x, const double* y, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output");
        *out = poisson_kernel(static_cast<HeatVariant>(variant), make_alpha(n, alpha), t,
                              to_vec(n, x), to_vec(n, y));
        return LV_OK;
    });
}

lv_status lv_riesz_kernel(int axis, int n, const double* alpha, const double* x,
                          const double* y, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output");
        *out = riesz_kernel(axis, make_alpha(n, alpha), to_vec(n, x), to_vec(n, y));
        return LV_OK;
    });
}

lv_status lv_conjugate_riesz_kernel(int axis, int n, const double* alpha, const double* x,
                                    const double* y, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("null output");
        *out = conjugate_riesz_kernel(axis, make_alpha(n, alpha), to_vec(n, x),
                                      to_vec(n, y));
        return LV_OK;
    });
}

lv_status lv_global_kernel(int setting, int n, const double* alpha, const double* x,
                           const double* y, const double* s, double* log_mag) {
    return guarded([&] {
        if (!log_mag) throw std::invalid_argument("null output");
        LogValue v = global_kernel_K(to_vec(n, x), to_vec(n, y), to_vec(n, s),
                                     make_alpha(n, alpha),
                                     setting == 1 ? GlobalKernelSetting::Riesz
                                                  : GlobalKernelSetting::PoissonVariation);
        *log_mag = v.log_mag;
        return LV_OK;
    });
}

lv_status lv_apply_heat(const lv_func* f, lv_heat_variant variant, double t, lv_func** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        SemigroupEngine eng(f->f.grid, static_cast<HeatVariant>(variant));
        *out = new lv_func{eng.apply_heat(f->f, t)};
        return LV_OK;
    });
}

lv_status lv_apply_poisson(const lv_func* f, double t, lv_func** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        HeatVariant variant = f->f.grid->kind() == MeasureKind::MuAlpha ? HeatVariant::W
                                                                        : HeatVariant::WHat;
        SemigroupEngine eng(f->f.grid, variant);
        *out = new lv_func{eng.apply_poisson(f->f, t)};
        return LV_OK;
    });
}

lv_status lv_apply_truncated_riesz(const lv_func* f, int axis, double eps, lv_func** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        RieszOperator op(f->f.grid, axis);
        *out = new lv_func{op.apply_truncated(f->f, eps)};
        return LV_OK;
    });
}

lv_status lv_weyl_trajectory(const lv_func* f, double beta, double t_lo, double t_hi,
                             int n_t, lv_traj** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        HeatVariant variant = f->f.grid->kind() == MeasureKind::MuAlpha ? HeatVariant::W
                                                                        : HeatVariant::WHat;
        SemigroupEngine eng(f->f.grid, variant);
        *out = new lv_traj{weyl_poisson_trajectory(eng, f->f, WeylOrder::make(beta),
                                                   TimeGrid::geometric(t_lo, t_hi, n_t))};
        return LV_OK;
    });
}

lv_status lv_riesz_trajectory(const lv_func* f, int axis, int eps_cap, uint64_t seed,
                              lv_traj** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        RieszOperator op(f->f.grid, axis);
        auto eps = op.default_eps_grid(eps_cap, seed);
        *out = new lv_traj{op.truncation_trajectory(f->f, eps)};
        return LV_OK;
    });
}

lv_status lv_gfunction(const lv_func* f, double beta, double t_lo, double t_hi, int n_t,
                       lv_func** out) {
    return guarded([&] {
        if (!f || !out) throw std::invalid_argument("null argument");
        HeatVariant variant = f->f.grid->kind() == MeasureKind::MuAlpha ? HeatVariant::W
                                                                        : HeatVariant::WHat;
        SemigroupEngine eng(f->f.grid, variant);
        *out = new lv_func{g_function(eng, f->f, beta, t_lo, t_hi, n_t).g};
        return LV_OK;
    });
}

void lv_traj_destroy(lv_traj* t) { delete t; }

lv_status lv_traj_counts(const lv_traj* t, int* n_params, int* n_nodes) {
    return guarded([&] {
        if (!t || !n_params || !n_nodes) throw std::invalid_argument("null argument");
        *n_params = t->t.param_count();
        *n_nodes = t->t.node_count;
        return LV_OK;
    });
}

lv_status lv_traj_write_csv(const lv_traj* t, const char* path) {
    return guarded([&] {
        if (!t || !path) throw std::invalid_argument("null argument");
        write_trajectory_csv(t->t, path);
        return LV_OK;
    });
}

lv_status lv_traj_read_csv(const char* path, lv_traj** out) {
    return guarded([&] {
        if (!path || !out) throw std::invalid_argument("null argument");
        *out = new lv_traj{read_trajectory_csv(path)};
        return LV_OK;
    });
}

lv_status lv_varop(const lv_traj* t, lv_varop_kind kind, double arg, double* out_values) {
    return guarded([&] {
        if (!t || !out_values) throw std::invalid_argument("null argument");
        const Trajectory& traj = t->t;
        for (int node = 0; node < traj.node_count; ++node) {
            auto slice = traj.node_slice(node);
            double v = 0.0;
            switch (kind) {
                case LV_VAROP_RHO_VARIATION:
                    v = rho_variation(slice, arg);
                    break;
                case LV_VAROP_OSCILLATION: {
                    auto ladder =
                        dyadic_ladder_in(traj.params.back(), traj.params.front());
                    v = oscillation(traj.params, slice, ladder);
                    break;
                }
                case LV_VAROP_JUMP:
                    v = static_cast<double>(jump_count(traj.params, slice, arg));
                    break;
                case LV_VAROP_SHORT_VARIATION:
                    v = short_variation(traj.params, slice);
                    break;
                default:
                    throw std::invalid_argument("unknown varop kind");
            }
            out_values[node] = v;
        }
        return LV_OK;
    });
}

lv_status lv_verify_bounds(int n, const double* alpha, double tau, int samples,
                           uint64_t seed, const char* out_json_path) {
    return guarded([&] {
        auto reports = verify_local_bounds(make_alpha(n, alpha), tau, samples, seed);
        if (out_json_path) {
            std::ofstream os(out_json_path);
            if (!os) throw std::runtime_error("cannot write report");
            os << bound_reports_to_json(reports) << "\n";
        }
        for (const auto& r : reports)
            if (!r.pass) return fail(LV_ERR_VERIFY, ("bound " + r.bound_id + " failed").c_str());
        return LV_OK;
    });
}

lv_status lv_verify_global(int n, const double* alpha, int samples, uint64_t seed,
                           const char* out_json_path) {
    return guarded([&] {
        auto report = verify_global_domination(make_alpha(n, alpha), samples, seed);
        if (out_json_path) {
            std::ofstream os(out_json_path);
            if (!os) throw std::runtime_error("cannot write report");
            os << bound_reports_to_json({report}) << "\n";
        }
        if (!report.pass) return fail(LV_ERR_VERIFY, "global domination failed");
        return LV_OK;
    });
}

lv_status lv_experiment_run(const char* config_json, const char* out_dir,
                            const char* format, char** result_json) {
    return guarded([&] {
        if (!config_json) throw std::invalid_argument("null config");
        ExperimentConfig cfg = ExperimentConfig::from_json(config_json);
        ExperimentResult res = run_experiment(cfg, out_dir ? out_dir : "",
                                              format ? format : "json");
        if (result_json) {
            std::string s = res.to_json();
            *result_json = new char[s.size() + 1];
            std::memcpy(*result_json, s.c_str(), s.size() + 1);
        }
        if (!res.pass) return fail(LV_ERR_VERIFY, "experiment pass criterion failed");
        return LV_OK;
    });
}

void lv_string_free(char* s) { delete[] s; }

} // extern "C"
