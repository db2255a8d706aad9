// lagvar command-line front end; everything goes through the C API.

#include "lagvar.h"

#include "CLI11.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stod(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

int status_to_exit(lv_status st) {
    if (st == LV_OK) return 0;
    if (st == LV_ERR_VERIFY) {
        std::fprintf(stderr, "verification failed: %s\n", lv_last_error());
        return 2;
    }
    std::fprintf(stderr, "error: %s\n", lv_last_error());
    return 1;
}

std::string read_file(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw CLI::ValidationError("cannot open " + path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), fp)) > 0) text.append(buf, n);
    std::fclose(fp);
    return text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laguerre semigroup variation operators"};
    app.require_subcommand(1);

    // --- kernel ---
    auto* kernel = app.add_subcommand("kernel", "evaluate kernels at points");
    std::string k_type = "heat", k_variant = "w-hat", k_alpha = "1", k_x, k_y, k_s;
    double k_t = 1.0;
    int k_axis = 1, k_setting = 0;
    kernel->add_option("--type", k_type, "heat|poisson|riesz|conjugate-riesz|global-K");
    kernel->add_option("--variant", k_variant, "w|w-hat|w-delta");
    kernel->add_option("--alpha", k_alpha, "comma-separated type index")->required();
    kernel->add_option("--t", k_t, "time parameter");
    kernel->add_option("--x", k_x)->required();
    kernel->add_option("--y", k_y)->required();
    kernel->add_option("--s", k_s, "point in (-1,1)^n (global-K only)");
    kernel->add_option("--axis", k_axis);
    kernel->add_option("--setting", k_setting, "0 = Poisson form, 1 = Riesz form");

    // --- apply ---
    auto* apply = app.add_subcommand("apply", "apply an operator to a CSV grid function");
    std::string a_op = "heat", a_variant = "w-hat", a_in, a_out = "out.csv";
    double a_t = 1.0, a_eps = 0.1;
    int a_axis = 1;
    apply->add_option("--op", a_op, "heat|poisson|riesz");
    apply->add_option("--variant", a_variant, "w|w-hat|w-delta (heat only)");
    apply->add_option("--input", a_in)->required();
    apply->add_option("--out", a_out);
    apply->add_option("--t", a_t);
    apply->add_option("--eps", a_eps);
    apply->add_option("--axis", a_axis);

    // --- varop ---
    auto* varop = app.add_subcommand("varop", "variational functional of a trajectory");
    std::string v_in, v_out;
    double v_rho = 3.0, v_lambda = 0.5;
    std::string v_kind = "var";
    varop->add_option("--kind", v_kind, "var|osc|jump|svar");
    varop->add_option("--rho", v_rho);
    varop->add_option("--lambda", v_lambda);
    varop->add_option("--input", v_in)->required();
    varop->add_option("--out", v_out, "write per-node values (default: print max)");

    // --- gfunc ---
    auto* gfunc = app.add_subcommand("gfunc", "Littlewood-Paley g-function");
    std::string g_in, g_out = "gfunc.csv";
    double g_beta = 1.0, g_tlo = 1e-4, g_thi = 30.0;
    int g_nt = 220;
    gfunc->add_option("--input", g_in)->required();
    gfunc->add_option("--beta", g_beta);
    gfunc->add_option("--t-lo", g_tlo);
    gfunc->add_option("--t-hi", g_thi);
    gfunc->add_option("--nt", g_nt);
    gfunc->add_option("--out", g_out);

    // --- verify-bounds ---
    auto* verify = app.add_subcommand("verify-bounds", "local/global kernel bound sweeps");
    std::string vb_alpha = "1", vb_out = "bounds.json", vb_which = "local";
    double vb_tau = 1.0;
    int vb_samples = 500;
    std::uint64_t vb_seed = 1;
    verify->add_option("--alpha", vb_alpha)->required();
    verify->add_option("--which", vb_which, "local|global");
    verify->add_option("--tau", vb_tau);
    verify->add_option("--samples", vb_samples);
    verify->add_option("--seed", vb_seed);
    verify->add_option("--out", vb_out);

    // --- experiment ---
    auto* exp = app.add_subcommand("experiment", "run a configured experiment");
    std::string e_config, e_out = ".", e_format = "json";
    std::uint64_t e_seed = 0;
    bool e_seed_set = false;
    exp->add_option("--config", e_config)->required();
    exp->add_option("--out", e_out);
    exp->add_option("--format", e_format, "csv|json");
    exp->add_option("--seed", e_seed)->each([&](const std::string&) { e_seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel->parsed()) {
            auto alpha = parse_list(k_alpha);
            auto x = parse_list(k_x), y = parse_list(k_y);
            int n = static_cast<int>(alpha.size());
            lv_heat_variant variant = k_variant == "w" ? LV_HEAT_W
                                      : k_variant == "w-delta" ? LV_HEAT_W_DELTA
                                                               : LV_HEAT_W_HAT;
            if (k_type == "heat") {
                int sign;
                double lm;
                lv_status st =
                    lv_heat_kernel(variant, n, alpha.data(), k_t, x.data(), y.data(),
                                   &sign, &lm);
                if (st != LV_OK) return status_to_exit(st);
                std::printf("%.17g\n", sign * std::exp(lm));
            } else if (k_type == "poisson") {
                double v;
                lv_status st = lv_poisson_kernel(variant, n, alpha.data(), k_t, x.data(),
                                                 y.data(), &v);
                if (st != LV_OK) return status_to_exit(st);
                std::printf("%.17g\n", v);
            } else if (k_type == "riesz" || k_type == "conjugate-riesz") {
                double v;
                lv_status st =
                    k_type == "riesz"
                        ? lv_riesz_kernel(k_axis, n, alpha.data(), x.data(), y.data(), &v)
                        : lv_conjugate_riesz_kernel(k_axis, n, alpha.data(), x.data(),
                                                    y.data(), &v);
                if (st != LV_OK) return status_to_exit(st);
                std::printf("%.17g\n", v);
            } else if (k_type == "global-K") {
                auto s = parse_list(k_s);
                double lm;
                lv_status st = lv_global_kernel(k_setting, n, alpha.data(), x.data(),
                                                y.data(), s.data(), &lm);
                if (st != LV_OK) return status_to_exit(st);
                std::printf("%.17g\n", lm);
            } else {
                std::fprintf(stderr, "unknown kernel type: %s\n", k_type.c_str());
                return 1;
            }
            return 0;
        }

        if (apply->parsed()) {
            lv_func* f = nullptr;
            lv_status st = lv_func_read_csv(a_in.c_str(), &f);
            if (st != LV_OK) return status_to_exit(st);
            lv_func* out = nullptr;
            if (a_op == "heat") {
                lv_heat_variant variant = a_variant == "w" ? LV_HEAT_W
                                          : a_variant == "w-delta" ? LV_HEAT_W_DELTA
                                                                   : LV_HEAT_W_HAT;
                st = lv_apply_heat(f, variant, a_t, &out);
            } else if (a_op == "poisson") {
                st = lv_apply_poisson(f, a_t, &out);
            } else if (a_op == "riesz") {
                st = lv_apply_truncated_riesz(f, a_axis, a_eps, &out);
            } else {
                std::fprintf(stderr, "unknown apply op: %s\n", a_op.c_str());
                lv_func_destroy(f);
                return 1;
            }
            if (st == LV_OK) st = lv_func_write_csv(out, a_out.c_str());
            lv_func_destroy(f);
            lv_func_destroy(out);
            return status_to_exit(st);
        }

        if (varop->parsed()) {
            lv_traj* t = nullptr;
            lv_status st = lv_traj_read_csv(v_in.c_str(), &t);
            if (st != LV_OK) return status_to_exit(st);
            int np, nn;
            lv_traj_counts(t, &np, &nn);
            std::vector<double> vals(nn);
            lv_varop_kind kind = v_kind == "osc" ? LV_VAROP_OSCILLATION
                                 : v_kind == "jump" ? LV_VAROP_JUMP
                                 : v_kind == "svar" ? LV_VAROP_SHORT_VARIATION
                                                    : LV_VAROP_RHO_VARIATION;
            double arg = kind == LV_VAROP_JUMP ? v_lambda : v_rho;
            st = lv_varop(t, kind, arg, vals.data());
            lv_traj_destroy(t);
            if (st != LV_OK) return status_to_exit(st);
            if (!v_out.empty()) {
                FILE* fp = std::fopen(v_out.c_str(), "w");
                if (!fp) {
                    std::fprintf(stderr, "cannot write %s\n", v_out.c_str());
                    return 1;
                }
                std::fprintf(fp, "node,value\n");
                for (int i = 0; i < nn; ++i) std::fprintf(fp, "%d,%.17g\n", i, vals[i]);
                std::fclose(fp);
            } else {
                double mx = 0.0;
                for (double v : vals) mx = std::max(mx, v);
                std::printf("%.17g\n", mx);
            }
            return 0;
        }

        if (gfunc->parsed()) {
            lv_func* f = nullptr;
            lv_status st = lv_func_read_csv(g_in.c_str(), &f);
            if (st != LV_OK) return status_to_exit(st);
            lv_func* out = nullptr;
            st = lv_gfunction(f, g_beta, g_tlo, g_thi, g_nt, &out);
            if (st == LV_OK) st = lv_func_write_csv(out, g_out.c_str());
            lv_func_destroy(f);
            lv_func_destroy(out);
            return status_to_exit(st);
        }

        if (verify->parsed()) {
            auto alpha = parse_list(vb_alpha);
            lv_status st;
            if (vb_which == "global")
                st = lv_verify_global(static_cast<int>(alpha.size()), alpha.data(),
                                      vb_samples, vb_seed, vb_out.c_str());
            else
                st = lv_verify_bounds(static_cast<int>(alpha.size()), alpha.data(), vb_tau,
                                      vb_samples, vb_seed, vb_out.c_str());
            return status_to_exit(st);
        }

        if (exp->parsed()) {
            std::string config = read_file(e_config);
            if (e_seed_set) {
                // command-line seed overrides the config
                auto pos = config.rfind('}');
                config = config.substr(0, pos) + ",\"seed\":" + std::to_string(e_seed) + "}";
            }
            char* result = nullptr;
            lv_status st =
                lv_experiment_run(config.c_str(), e_out.c_str(), e_format.c_str(), &result);
            if (result) {
                std::printf("%s\n", result);
                lv_string_free(result);
            }
            return status_to_exit(st);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
