/* Plain-C interface of the oriented-line-space intersection library.
 *
 * All objects are opaque handles; every function returns a status code and
 * reports details through lc_last_error(). Strings returned through out
 * parameters are heap-allocated; release them with lc_string_free().
 * Thread safety: handles are immutable after creation; the error message is
 * thread-local.
 */
#ifndef LINECURVE_LINECURVE_H
#define LINECURVE_LINECURVE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lc_surface lc_surface;

/* Status codes; the nonzero values double as process exit codes. */
typedef enum lc_status {
  LC_OK = 0,
  LC_ERROR = 1,              /* any failure not listed below */
  LC_SCHEMA_ERROR = 2,       /* malformed or out-of-schema configuration */
  LC_NON_CONVEX = 3,         /* configured surface fails the convexity screen */
  LC_NO_INTERSECTION = 4,    /* the surfaces do not meet */
  LC_TANGENTIAL_CONTACT = 5, /* the surfaces touch without crossing */
} lc_status;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
const char* lc_version(void);

/* Message of the last failure on this thread. Static storage; do not free. */
const char* lc_last_error(void);

/* Release a string returned through an out parameter. NULL is allowed. */
void lc_string_free(char* s);

/* Create a surface from a JSON configuration document (see the README for
 * the schema). On success stores the handle in *out. */
lc_status lc_surface_create(const char* config_json, lc_surface** out);

void lc_surface_destroy(lc_surface* s);

/* Curvature census of one surface: convexity data, umbilic points with
 * indices, and the index-sum check. grid_n <= 0 selects the default grid.
 * *census_csv is set to NULL when the census is degenerate (round sphere).
 * Either out pointer may be NULL if the caller does not need it. */
lc_status lc_surface_info(const lc_surface* s, int grid_n, char** report_json,
                          char** census_csv);

/* Trace the intersection curve of two surfaces and run the verification
 * stack. seed is either NULL (automatic search) or "re,im,re,im": the chart
 * guesses of the two surface normals at a common point. step <= 0 selects
 * the default continuation step. */
lc_status lc_intersect(const lc_surface* s1, const lc_surface* s2,
                       const char* seed, double step, char** report_json,
                       char** curve_csv);

/* Run the embedded invariant audits. Returns LC_OK iff all pass; *table is
 * the human-readable PASS/FAIL table (may be NULL if not wanted). */
lc_status lc_selftest(char** table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif
