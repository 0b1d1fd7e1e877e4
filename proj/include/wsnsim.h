#ifndef WSNSIM_H
#define WSNSIM_H

/* C interface to the wsnsim simulation core.
 *
 * All entry points return a wsnsim_status; on any failure the thread-local
 * message from wsnsim_last_error() describes what went wrong. Objects are
 * opaque handles created and released through their *_free functions.
 * Strings returned through char** outputs are heap-allocated and must be
 * released with wsnsim_string_free().
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsnsim_status {
    WSNSIM_OK = 0,
    WSNSIM_ERROR = 1,        /* generic failure                      */
    WSNSIM_CONFIG_ERROR = 2, /* bad config value or unknown key      */
    WSNSIM_IO_ERROR = 3,     /* file could not be read or written    */
    WSNSIM_CHECK_FAILED = 4  /* a verification harness found a gap   */
} wsnsim_status;

typedef struct wsnsim_config wsnsim_config;
typedef struct wsnsim_result wsnsim_result;

const char* wsnsim_version(void);

/* Message describing the most recent failure on this thread. */
const char* wsnsim_last_error(void);

void wsnsim_string_free(char* s);

/* --- configuration ----------------------------------------------------- */

/* Built-in defaults (Table-style parameter set; 100 nodes, 100 rounds). */
wsnsim_status wsnsim_config_default(wsnsim_config** out);

/* Reads a JSON config file and merges it over the defaults. Unknown keys
 * are rejected. */
wsnsim_status wsnsim_config_load(const char* path, wsnsim_config** out);

/* Applies one dotted-key override, e.g. ("radio.e_fs", "1e-11"). The value
 * is parsed as JSON; bare words are treated as strings. */
wsnsim_status wsnsim_config_set(wsnsim_config* cfg, const char* dotted_key, const char* value);

wsnsim_status wsnsim_config_set_seed(wsnsim_config* cfg, uint64_t seed);
wsnsim_status wsnsim_config_set_strict_radius(wsnsim_config* cfg, int strict);

/* Resolved configuration as a JSON string. */
wsnsim_status wsnsim_config_dump(const wsnsim_config* cfg, char** json_out);

void wsnsim_config_free(wsnsim_config* cfg);

/* --- simulation runs --------------------------------------------------- */

/* Full simulation. model_in (optional) loads a pretrained fusion net
 * instead of training; model_out (optional) saves the net that was used. */
wsnsim_status wsnsim_run(const wsnsim_config* cfg, const char* model_in, const char* model_out,
                         wsnsim_result** out);

/* Direct-transmission baseline over the same topology and seed. */
wsnsim_status wsnsim_run_baseline(const wsnsim_config* cfg, wsnsim_result** out);

void wsnsim_result_free(wsnsim_result* result);

wsnsim_status wsnsim_result_write_rounds_csv(const wsnsim_result* result, const char* path);
wsnsim_status wsnsim_result_write_summary_json(const wsnsim_result* result, const char* path);
wsnsim_status wsnsim_result_summary_json(const wsnsim_result* result, char** json_out);

/* Comparison report between two runs of the same population size and round
 * count. Either of path/json_out may be NULL. */
wsnsim_status wsnsim_compare(const wsnsim_result* proposed, const wsnsim_result* baseline,
                             const char* path, char** json_out);

/* --- verification harnesses -------------------------------------------- */

/* Backprop gradients vs central finite differences on `net_count` random
 * nets. Returns WSNSIM_OK when every entry matches within tolerance,
 * WSNSIM_CHECK_FAILED otherwise; the JSON report is always produced. */
wsnsim_status wsnsim_gradcheck(uint64_t seed, int net_count, char** report_json);

/* Prim vs exhaustive-enumeration minimum on `cluster_count` random
 * clusters. Same status convention as wsnsim_gradcheck. */
wsnsim_status wsnsim_mstcheck(uint64_t seed, int cluster_count, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* WSNSIM_H */
