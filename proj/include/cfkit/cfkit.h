/* cfkit: compute-forward achievable-rate toolkit.
 *
 * C interface to the core library. Handles are opaque; every function
 * returns CFK_OK or an error code, with a thread-local message available
 * from cfk_last_error(). Structured inputs and outputs are JSON strings;
 * strings returned through an out-parameter are owned by the caller and
 * must be released with cfk_free().
 */
#ifndef CFKIT_H
#define CFKIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CFK_OK 0
#define CFK_EINVAL 1  /* malformed request or parameter */
#define CFK_EBUDGET 3 /* decoder hypothesis budget exceeded */
#define CFK_ERROR 4   /* internal failure */

typedef struct cfk_channel cfk_channel;

const char* cfk_version(void);
const char* cfk_last_error(void);
void cfk_free(char* str);

/* Channel specs:
 *   {"type":"dm_mac","K":2,"inputs":[2,2],"output":2,"cond":[...]}
 *   {"type":"gaussian_mac","h":[1.0,1.4142135623730951],"power":[25,18]}
 * Builtins: "bmm", "sym_gaussian" (params: [P]),
 * "example4_rx1" / "example4_rx2" (params: [P1, P2, h], defaults 25, 18, sqrt 2).
 */
int cfk_channel_parse(const char* json_text, cfk_channel** out);
int cfk_channel_builtin(const char* name, const double* params, int n_params,
                        cfk_channel** out);
int cfk_channel_to_json(const cfk_channel* chan, char** json_out);
void cfk_channel_free(cfk_channel* chan);

/* Rate-region computation over a channel. Request keys: "theorem"
 * ("thm1" | "thm2" | "thm4" | "cor1" | "lmac"), "q", "pmfs", optional
 * "labels", "maps", "a", "a2", "beta", "quantizer_j", "prime_q".
 * Returns the region JSON, its vertices, and scalar summaries.
 */
int cfk_region(const cfk_channel* chan, const char* request_json,
               char** result_json);

/* Input-distribution search. Request keys: "objective" ("cf_symmetric" |
 * "classical_mac_symmetric"), "family" ("bern" | "ternary" | "uniform"),
 * "q", "a", "grid_step".
 */
int cfk_optimize(const cfk_channel* chan, const char* request_json,
                 char** result_json);

/* Figure data series: name is "fig4", "fig5", or "fig7". The result maps
 * output filenames to file bodies.
 */
int cfk_figure(const char* name, const char* request_json, char** result_json);

/* Monte-Carlo nested-linear-code simulation; see README for the config
 * schema. Returns the report JSON.
 */
int cfk_simulate(const char* config_json, char** report_json);

/* Ensemble statistics battery (uniformity, independence, index counts,
 * mismatched-typicality exponent).
 */
int cfk_lemma_checks(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* CFKIT_H */
