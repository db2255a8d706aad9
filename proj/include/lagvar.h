/* C API for the Laguerre variation-operator library.
 *
 * All objects are opaque handles created and destroyed here; every function
 * returns a status code and reports details through lv_last_error. */
#ifndef LAGVAR_H
#define LAGVAR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lv_status {
    LV_OK = 0,
    LV_ERR_USAGE = 1,        /* bad arguments / misuse */
    LV_ERR_VERIFY = 2,       /* a verification sweep reported failure */
    LV_ERR_DOMAIN = 3,       /* out-of-domain numeric input */
    LV_ERR_IO = 4,           /* file could not be read/written/parsed */
    LV_ERR_INTERNAL = 5
} lv_status;

typedef enum lv_measure {
    LV_MEASURE_MU = 0,
    LV_MEASURE_NU = 1
} lv_measure;

typedef enum lv_heat_variant {
    LV_HEAT_W = 0,
    LV_HEAT_W_HAT = 1,
    LV_HEAT_W_DELTA = 2
} lv_heat_variant;

typedef enum lv_varop_kind {
    LV_VAROP_RHO_VARIATION = 0,
    LV_VAROP_OSCILLATION = 1,
    LV_VAROP_JUMP = 2,
    LV_VAROP_SHORT_VARIATION = 3
} lv_varop_kind;

typedef struct lv_grid lv_grid;
typedef struct lv_func lv_func;
typedef struct lv_traj lv_traj;

const char* lv_version(void);

/* thread-local message for the most recent failure */
const char* lv_last_error(void);

/* ---- grids and grid functions ------------------------------------------ */

lv_status lv_grid_create(lv_measure measure, int n, const double* alpha,
                         int nodes_per_axis, lv_grid** out);
void lv_grid_destroy(lv_grid* g);
lv_status lv_grid_size(const lv_grid* g, int* out);
/* buffers sized size*n and size */
lv_status lv_grid_nodes(const lv_grid* g, double* coords);
lv_status lv_grid_weights(const lv_grid* g, double* weights);

lv_status lv_func_create(const lv_grid* g, const double* re, const double* im,
                         lv_func** out);
lv_status lv_func_eigen(const lv_grid* g, const int* k, lv_func** out);
void lv_func_destroy(lv_func* f);
lv_status lv_func_size(const lv_func* f, int* out);
lv_status lv_func_values(const lv_func* f, double* re, double* im);
lv_status lv_func_write_csv(const lv_func* f, const char* path);
lv_status lv_func_read_csv(const char* path, lv_func** out);
lv_status lv_func_lp_norm(const lv_func* f, double p, double* out);

/* ---- kernels ------------------------------------------------------------ */

lv_status lv_heat_kernel(lv_heat_variant variant, int n, const double* alpha, double t,
                         const double* x, const double* y, int* sign, double* log_mag);
lv_status lv_poisson_kernel(lv_heat_variant variant, int n, const double* alpha, double t,
                            const double* x, const double* y, double* out);
lv_status lv_riesz_kernel(int axis, int n, const double* alpha, const double* x,
                          const double* y, double* out);
lv_status lv_conjugate_riesz_kernel(int axis, int n, const double* alpha, const double* x,
                                    const double* y, double* out);
/* setting: 0 = Poisson-variation form, 1 = Riesz form */
lv_status lv_global_kernel(int setting, int n, const double* alpha, const double* x,
                           const double* y, const double* s, double* log_mag);

/* ---- operators ----------------------------------------------------------- */

lv_status lv_apply_heat(const lv_func* f, lv_heat_variant variant, double t, lv_func** out);
lv_status lv_apply_poisson(const lv_func* f, double t, lv_func** out);
lv_status lv_apply_truncated_riesz(const lv_func* f, int axis, double eps, lv_func** out);

/* t^beta D^beta P_t f over a geometric time grid (beta = 0 gives P_t f). */
lv_status lv_weyl_trajectory(const lv_func* f, double beta, double t_lo, double t_hi,
                             int n_t, lv_traj** out);
lv_status lv_riesz_trajectory(const lv_func* f, int axis, int eps_cap, uint64_t seed,
                              lv_traj** out);

lv_status lv_gfunction(const lv_func* f, double beta, double t_lo, double t_hi, int n_t,
                       lv_func** out);

/* ---- trajectories and variational functionals ---------------------------- */

void lv_traj_destroy(lv_traj* t);
lv_status lv_traj_counts(const lv_traj* t, int* n_params, int* n_nodes);
lv_status lv_traj_write_csv(const lv_traj* t, const char* path);
lv_status lv_traj_read_csv(const char* path, lv_traj** out);

/* one value per node; arg carries rho (variation) or lambda (jump) and is
 * ignored for the others */
lv_status lv_varop(const lv_traj* t, lv_varop_kind kind, double arg, double* out_values);

/* ---- verification and experiments ---------------------------------------- */

/* writes a JSON report; returns LV_ERR_VERIFY when a bound fails its
 * stability check */
lv_status lv_verify_bounds(int n, const double* alpha, double tau, int samples,
                           uint64_t seed, const char* out_json_path);
lv_status lv_verify_global(int n, const double* alpha, int samples, uint64_t seed,
                           const char* out_json_path);

/* config is the JSON text documented in the README; out_dir may be empty */
lv_status lv_experiment_run(const char* config_json, const char* out_dir,
                            const char* format, char** result_json);
void lv_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
