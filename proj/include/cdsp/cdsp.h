/* C interface to the CDSP causal-direction toolkit.
 *
 * All functions return cdsp_status; on failure cdsp_last_error() gives a
 * message for the calling thread. Results are opaque handles owning their
 * serialized reports; free them with cdsp_result_free().
 */
#ifndef CDSP_CDSP_H
#define CDSP_CDSP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdsp_status {
    CDSP_OK = 0,
    CDSP_ERR_INPUT = 2,      /* malformed file, config, or arguments */
    CDSP_ERR_DEGENERATE = 3, /* data on which the procedure is undefined */
    CDSP_ERR_NUMERIC = 4     /* internal numeric failure */
} cdsp_status;

typedef struct cdsp_config {
    double alpha;            /* significance level, (0,1) */
    int n_boot_outer;        /* outer bootstrap replicates, >= 50 */
    int n_boot_inner;        /* inner bootstrap replicates, >= 50 */
    uint64_t seed;
    int subsample_cap;       /* benchmark row cap; <= 0 disables */
    int with_lingam;         /* infer: also run the LiNGAM baseline */
    int linear_only;         /* bench: restrict to the linear subset */
    int weighted;            /* bench: also report weight-scored TDR/FDR */
} cdsp_config;

/* Fills in the documented defaults (alpha 0.05, 100/100 bootstraps, seed 1,
 * cap 2000). */
void cdsp_config_default(cdsp_config* cfg);

typedef struct cdsp_result cdsp_result;

/* Direction inference on one paired sample. */
cdsp_status cdsp_infer(const double* xs, const double* ys, size_t n,
                       const cdsp_config* cfg, cdsp_result** out);

/* Direction inference on a two-column whitespace/CSV numeric file. */
cdsp_status cdsp_infer_file(const char* path, const cdsp_config* cfg,
                            cdsp_result** out);

/* LiNGAM baseline only. */
cdsp_status cdsp_lingam(const double* xs, const double* ys, size_t n,
                        const cdsp_config* cfg, cdsp_result** out);
cdsp_status cdsp_lingam_file(const char* path, const cdsp_config* cfg,
                             cdsp_result** out);

/* Simulation experiment. `scenario` is a preset name (see README) or the
 * path of a key = value scenario file. */
cdsp_status cdsp_simulate(const char* scenario, const cdsp_config* cfg,
                          cdsp_result** out);

/* Cause-effect pair benchmark over a data directory plus metadata file. */
cdsp_status cdsp_bench(const char* data_dir, const char* meta_file,
                       const cdsp_config* cfg, cdsp_result** out);

/* Serialized views of a result; pointers are owned by the handle and stay
 * valid until cdsp_result_free. cdsp_result_csv/aux_csv return NULL when the
 * command produces no tabular/histogram output. */
const char* cdsp_result_json(const cdsp_result* result);
const char* cdsp_result_csv(const cdsp_result* result);
const char* cdsp_result_aux_csv(const cdsp_result* result);

void cdsp_result_free(cdsp_result* result);

/* Message for the most recent failure on this thread. */
const char* cdsp_last_error(void);

const char* cdsp_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CDSP_CDSP_H */
