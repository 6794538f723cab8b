/* C interface of the liesphere shared library.
 *
 * Every function returns an ls_status. On failure the message is available through
 * ls_last_error() (per thread, valid until the next call on that thread). Strings returned
 * through char** outputs are owned by the caller and released with ls_free_string. Handles
 * are released with their matching *_free function; passing NULL to a free function is a no-op.
 */
#ifndef LIESPHERE_C_H
#define LIESPHERE_C_H

#include <stddef.h>

#if defined(_WIN32)
#define LS_API __declspec(dllexport)
#elif defined(LIESPHERE_BUILDING)
#define LS_API __attribute__((visibility("default")))
#else
#define LS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ls_status {
    LS_OK = 0,
    LS_ERR_USAGE = 1,      /* invalid argument, unknown kind, wrong dimensions */
    LS_ERR_ANALYSIS = 2,   /* analysis or fit failure */
    LS_ERR_IO = 3,         /* unreadable file, malformed JSON, schema mismatch */
    LS_ERR_DOMAIN = 4,     /* value outside the domain of an operation */
    LS_ERR_VALIDATION = 5, /* input violates a geometric precondition */
    LS_ERR_DEGENERATE = 6, /* degenerate configuration, e.g. a tube radius on a focal radius */
    LS_ERR_INTERNAL = 7
} ls_status;

typedef struct ls_grid ls_grid;           /* sampled Legendre map [Z1, Zn3] */
typedef struct ls_surface ls_surface;     /* sampled hypersurface with unit normals */
typedef struct ls_transform ls_transform; /* Lie sphere transformation */

LS_API const char* ls_version(void);
LS_API const char* ls_last_error(void);
LS_API const char* ls_status_name(int status);
LS_API void ls_free_string(char* s);

/* Lie coordinates of an object given as JSON ({"type": "point", "point": [..]} etc.);
 * the result is {"type": "lie", "coords": [..], "metric": [..]} with coords scaled to unit
 * max-norm, plus the decoded Euclidean and spherical forms where they exist. */
LS_API ls_status ls_convert(const char* object_json, char** out_json);
/* *out = 1 iff |<k1,k2>| <= tol * |k1| |k2|. */
LS_API ls_status ls_contact(const char* a_json, const char* b_json, double tol, int* out);

LS_API ls_status ls_surface_load(const char* path, ls_surface** out);
LS_API ls_status ls_surface_save(const ls_surface* s, const char* path);
LS_API ls_status ls_surface_from_json(const char* json, ls_surface** out);
LS_API ls_status ls_surface_to_json(const ls_surface* s, char** out_json);
/* Built-in family, e.g. {"kind": "torus", "a": 2, "b": 1, "resolution": 64}. */
LS_API ls_status ls_surface_example(const char* spec_json, ls_surface** out);
/* kind: cylinder | revolution | tube | cone | invert | hopf_preimage; params may be NULL. */
LS_API ls_status ls_surface_construct(const char* kind, const ls_surface* in, const char* params_json,
                                      ls_surface** out);
LS_API long ls_surface_samples(const ls_surface* s);
LS_API void ls_surface_free(ls_surface* s);

LS_API ls_status ls_grid_load(const char* path, ls_grid** out);
LS_API ls_status ls_grid_save(const ls_grid* g, const char* path);
LS_API ls_status ls_grid_from_json(const char* json, ls_grid** out);
LS_API ls_status ls_grid_to_json(const ls_grid* g, char** out_json);
LS_API ls_status ls_grid_example(const char* spec_json, ls_grid** out);
LS_API ls_status ls_lift(const ls_surface* s, ls_grid** out);
LS_API int ls_grid_n(const ls_grid* g);
LS_API long ls_grid_samples(const ls_grid* g);
/* Copies Z1 and Zn3 of one sample (n+3 doubles each); either output may be NULL. */
LS_API ls_status ls_grid_sample(const ls_grid* g, long index, double* z1, double* zn3);
LS_API void ls_grid_free(ls_grid* g);

/* {"kind": "identity" | "parallel" | "orientation" | "boost" | "random" | "matrix", ...}. */
LS_API ls_status ls_transform_make(int n, const char* spec_json, ls_transform** out);
LS_API ls_status ls_transform_load(const char* path, ls_transform** out);
LS_API ls_status ls_transform_save(const ls_transform* t, const char* path);
LS_API ls_status ls_transform_apply(const ls_transform* t, const ls_grid* g, ls_grid** out);
LS_API void ls_transform_free(ls_transform* t);

/* Full analysis report as JSON. options_json may be NULL. *classified is 0 when validation or
 * curvature analysis failed (the report then explains why); it may be NULL. */
LS_API ls_status ls_analyze(const ls_grid* g, const char* options_json, char** report_json, int* classified);

/* OBJ mesh of the "euclidean" or "spherical" projection written to path. */
LS_API ls_status ls_export_obj(const ls_grid* g, const char* projection, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* LIESPHERE_C_H */
