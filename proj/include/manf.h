/* SPDX-License-Identifier: Apache-2.0
 *
 * manf - movable-antenna near-field beamforming toolkit
 * Public C interface of the shared library.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * Usage pattern:
 *
 *   manf_config *cfg = manf_config_from_file("scenario.json");
 *   if (!cfg) { fputs(manf_last_error(), stderr); return 1; }
 *   manf_config_override(cfg, "seed", "7");
 *   manf_result *res = NULL;
 *   int rc = manf_run(cfg, "null", "out/", &res);
 *   ...
 *   manf_result_free(res);
 *   manf_config_free(cfg);
 *
 * All functions returning int yield MANF_OK (0) on success; on failure the
 * thread-local message from manf_last_error() describes what went wrong.
 */

#ifndef MANF_H
#define MANF_H

#include <stddef.h>

#if defined _WIN32
#define MANF_API __declspec(dllexport)
#else
#define MANF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
    MANF_OK = 0,
    MANF_ERR_INVALID_ARGUMENT = 1,
    MANF_ERR_INFEASIBLE = 2,
    MANF_ERR_RANK_DEFICIENT = 3,
    MANF_ERR_DEGENERATE_DIRECTION = 4,
    MANF_ERR_INFEASIBLE_FACTORIZATION = 5,
    MANF_ERR_NEGATIVE_CURVATURE = 6,
    MANF_ERR_IRRATIONAL_INPUT = 7,
    MANF_ERR_EMPTY_FEASIBLE_SET = 8,
    MANF_ERR_SOLVER_FAILURE = 9,
    MANF_ERR_NOT_NULLED = 10,
    MANF_ERR_NOT_FULL_GAIN = 11,
    MANF_ERR_TOO_LARGE = 12,
    MANF_ERR_IO = 13,
    MANF_ERR_INTERNAL = 14
};

typedef struct manf_config manf_config;
typedef struct manf_result manf_result;

MANF_API const char *manf_version(void);

/* Thread-local message describing the most recent failure in this thread. */
MANF_API const char *manf_last_error(void);

/* Process exit code convention: 0 success, 2 infeasible/bad input, 3 solver
 * or internal failure. */
MANF_API int manf_exit_code(int err);

/* --- configuration ------------------------------------------------------ */

MANF_API manf_config *manf_config_default(void);
MANF_API manf_config *manf_config_from_file(const char *path);
MANF_API manf_config *manf_config_from_json(const char *json_text);
MANF_API int manf_config_override(manf_config *cfg, const char *dotted_key, const char *value);
/* Serialized configuration; free with manf_string_free. */
MANF_API char *manf_config_to_json(const manf_config *cfg);
MANF_API void manf_config_free(manf_config *cfg);
MANF_API void manf_string_free(char *s);

/* --- execution ----------------------------------------------------------- */

/* command: "null" | "multibeam" | "construct" | "robust" | "heatmap" |
 * "montecarlo". out_dir may be NULL to skip file emission. On success *out
 * (if non-NULL) receives a result handle. */
MANF_API int manf_run(const manf_config *cfg, const char *command, const char *out_dir,
                      manf_result **out);

/* --- results ------------------------------------------------------------- */

MANF_API size_t manf_result_num_antennas(const manf_result *res);
MANF_API size_t manf_result_num_users(const manf_result *res); /* incl. target */
/* Each copies up to cap values and returns the count written. */
MANF_API size_t manf_result_positions(const manf_result *res, double *out, size_t cap);
MANF_API size_t manf_result_weights(const manf_result *res, double *re, double *im, size_t cap);
MANF_API size_t manf_result_gains(const manf_result *res, double *out, size_t cap);
MANF_API double manf_result_objective(const manf_result *res);
/* JSON summary; the string is owned by the result handle. */
MANF_API const char *manf_result_summary(const manf_result *res);
MANF_API void manf_result_free(manf_result *res);

#ifdef __cplusplus
}
#endif

#endif /* MANF_H */
