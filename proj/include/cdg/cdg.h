#ifndef CDG_CDG_H
#define CDG_CDG_H

/* C interface to the CDG-algebra library.
 *
 * A workspace holds named categories (each with the modules declared in its
 * file). Every operation returns a status code and, on success, a report
 * handle owning its text and JSON renderings. Strings returned by accessors
 * stay valid until the owning handle is freed. */

#include <stddef.h>
#include <stdint.h>

#if defined(CDG_BUILDING_LIBRARY)
#define CDG_API __attribute__((visibility("default")))
#else
#define CDG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdg_status {
  CDG_OK = 0,
  CDG_MATH_FAILURE = 1, /* a checked identity failed, or a comparison is unequal */
  CDG_USAGE = 2,        /* bad arguments or unparseable input */
  CDG_UNSUPPORTED = 3   /* the computation does not apply to this input */
} cdg_status;

typedef enum cdg_kind { CDG_FIRST_KIND = 1, CDG_SECOND_KIND = 2 } cdg_kind;

typedef struct cdg_workspace cdg_workspace;
typedef struct cdg_report cdg_report;

CDG_API cdg_workspace* cdg_workspace_new(void);
CDG_API void cdg_workspace_free(cdg_workspace* ws);
/* Message of the last failed call on this workspace ("" if none). */
CDG_API const char* cdg_last_error(const cdg_workspace* ws);

/* field may be NULL (keep the file's field) or "Q" / "Fp:<p>". */
CDG_API cdg_status cdg_load_category(cdg_workspace* ws, const char* name, const char* path, const char* field);
CDG_API int cdg_has_category(const cdg_workspace* ws, const char* name);

/* Axiom checks of a category, or of one of its modules when module != NULL. */
CDG_API cdg_status cdg_validate(cdg_workspace* ws, const char* category, const char* module, cdg_report** out);
/* Summary of a loaded category and its modules. */
CDG_API cdg_status cdg_show(cdg_workspace* ws, const char* category, cdg_report** out);

/* Hochschild (co)homology. coefficients: NULL for the diagonal, or the name
 * of an entry of the file's "bimodules" map. */
CDG_API cdg_status cdg_hh(cdg_workspace* ws, const char* category, cdg_kind kind, int cohomology, int truncation,
                          const char* coefficients, int max_depth, cdg_report** out);
/* Tor(right, left) and Ext(first, second) over a category. */
CDG_API cdg_status cdg_tor(cdg_workspace* ws, const char* category, const char* right, const char* left, cdg_kind kind,
                           int truncation, int max_depth, cdg_report** out);
CDG_API cdg_status cdg_ext(cdg_workspace* ws, const char* category, const char* first, const char* second,
                           cdg_kind kind, int truncation, int max_depth, cdg_report** out);
CDG_API cdg_status cdg_resolve(cdg_workspace* ws, const char* category, const char* module, int max_depth,
                               cdg_report** out);

/* complex: "bar", "cobar", "hochschild" or "hochschild-cochains". The
 * module names are ignored for the Hochschild complexes (diagonal). */
CDG_API cdg_status cdg_complex_dump(cdg_workspace* ws, const char* category, const char* complex, const char* first,
                                    const char* second, int truncation, int reduced, const char* dir,
                                    cdg_report** out);

/* suite: "bicomplex-identities", "functoriality" or "classical-hochschild".
 * The last one runs on every loaded one-object category with zero
 * curvature, plus `cases` random ones. */
CDG_API cdg_status cdg_check(cdg_workspace* ws, const char* suite, uint64_t seed, int cases, int truncation,
                             cdg_report** out);

/* what: "BvsC" (objects = comma-separated module names), "curvature-shift"
 * (scalar = the shift), or "grading-pushforward" (to Z/2). */
CDG_API cdg_status cdg_compare(cdg_workspace* ws, const char* what, const char* category, const char* objects,
                               const char* scalar, int truncation, cdg_report** out);
/* Exactness of the delta columns for B with scalar curvature. */
CDG_API cdg_status cdg_delta_probe(cdg_workspace* ws, const char* category, int truncation, cdg_report** out);

CDG_API const char* cdg_report_text(const cdg_report* r);
CDG_API const char* cdg_report_json(const cdg_report* r);
/* 1 if the report's outcome is a success (valid, equal, exact, ...). */
CDG_API int cdg_report_ok(const cdg_report* r);
/* Re-read the JSON of a homology report. */
CDG_API cdg_status cdg_report_from_json(const char* json, cdg_report** out);
CDG_API void cdg_report_free(cdg_report* r);

#ifdef __cplusplus
}
#endif

#endif
