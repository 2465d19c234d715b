#ifndef IQP_IQP_H
#define IQP_IQP_H

#include <stddef.h>
#include <stdint.h>

#if defined(IQP_BUILDING_LIBRARY)
#define IQP_API __attribute__((visibility("default")))
#else
#define IQP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as command line exit codes. */
typedef enum iqp_status {
  IQP_OK = 0,
  IQP_CHECK_FAILED = 1,
  IQP_MALFORMED = 2,
  IQP_UNSUPPORTED = 3,
  IQP_LIMIT = 4,
  IQP_INTERNAL = 5
} iqp_status;

/* An immutable ice quiver with potential. */
typedef struct iqp_doc iqp_doc;

IQP_API const char* iqp_version(void);

/* One-line JSON describing the last failure on the calling thread, or "". */
IQP_API const char* iqp_last_error(void);

IQP_API void iqp_free(iqp_doc* doc);
IQP_API void iqp_string_free(char* s);

IQP_API iqp_status iqp_parse(const char* json, iqp_doc** out);
IQP_API iqp_status iqp_dump(const iqp_doc* doc, char** out_json);
IQP_API int iqp_truncation(const iqp_doc* doc);
/* Copy of doc with the potential re-truncated at the given degree. */
IQP_API iqp_status iqp_with_truncation(const iqp_doc* doc, int truncation, iqp_doc** out);

/* Writes a validation report. Returns IQP_CHECK_FAILED if the quiver is invalid. */
IQP_API iqp_status iqp_validate(const char* json, char** out_report);
IQP_API iqp_status iqp_mutability(const iqp_doc* doc, const char* vertex, char** out_json);

/* Mutates at each vertex in turn. out_json (nullable) receives
   {iqp, mutability, trace}. Non-mutable vertices give IQP_UNSUPPORTED. */
IQP_API iqp_status iqp_mutate(const iqp_doc* doc, const char* const* vertices, size_t count, int canonical,
                              iqp_doc** out, char** out_json);
IQP_API iqp_status iqp_premutate(const iqp_doc* doc, const char* vertex, iqp_doc** out);
/* out_trace (nullable) receives the reduction trace as JSON. */
IQP_API iqp_status iqp_reduce(const iqp_doc* doc, iqp_doc** out, char** out_trace);
IQP_API iqp_status iqp_canonical(const iqp_doc* doc, iqp_doc** out);

/* Presentations of the relative Ginzburg algebra and of Pi_2 of the frozen
   part. text != 0 selects the human-readable form. */
IQP_API iqp_status iqp_ginzburg(const iqp_doc* doc, int truncation, int text, char** out);
IQP_API iqp_status iqp_pi2(const iqp_doc* doc, int truncation, int text, char** out);

/* name is one of "d2", "h0", "boundary", "pj", "involution". vertex may be
   NULL except for "involution". Returns IQP_CHECK_FAILED when the check
   runs but does not pass; the report is written either way. */
IQP_API iqp_status iqp_check(const iqp_doc* doc, const char* name, int truncation, const char* vertex,
                             char** out_report);

IQP_API iqp_status iqp_invariants(const iqp_doc* doc, int truncation, char** out_json);
IQP_API iqp_status iqp_dot(const iqp_doc* doc, char** out);
/* {isomorphic, vertex_map?, arrow_map?} */
IQP_API iqp_status iqp_isomorphic(const iqp_doc* a, const iqp_doc* b, char** out_json);
IQP_API iqp_status iqp_random(uint64_t seed, iqp_doc** out, char** out_vertex);

/* Stateless HTTP handlers. path is "/mutate", "/invariants", "/iso" or
   "/health". */
IQP_API iqp_status iqp_handle(const char* method, const char* path, const char* body, int* http_status,
                              char** out_body);
/* Blocks. Returns IQP_INTERNAL if the socket cannot be bound. */
IQP_API iqp_status iqp_serve(const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif
