/* C interface to the cfworld library. Every function returns a cfw_status;
 * on failure cfw_last_error() describes the problem. Strings returned
 * through char** are owned by the caller and released with
 * cfw_string_free. Structured results are JSON text. */
#ifndef CFWORLD_H
#define CFWORLD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CFW_API __declspec(dllexport)
#else
#define CFW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfw_status {
  CFW_OK = 0,
  CFW_INVALID_INPUT = 1,
  CFW_UNKNOWN_VARIABLE = 2,
  CFW_DUPLICATE_VARIABLE = 3,
  CFW_INVALID_SIGNATURE = 4,
  CFW_MISSING_TABLE = 5,
  CFW_NON_TOTAL_TABLE = 6,
  CFW_VALUE_OUT_OF_RANGE = 7,
  CFW_NOT_ENDOGENOUS = 8,
  CFW_PARTIAL_CONTEXT = 9,
  CFW_SYNTAX_ERROR = 10,
  CFW_UNKNOWN_OPERATOR = 11,
  CFW_LANGUAGE_TOO_RICH = 12,
  CFW_ILL_FORMED = 13,
  CFW_NOT_REFLEXIVE = 14,
  CFW_NOT_TRANSITIVE = 15,
  CFW_SELF_NOT_MINIMAL = 16,
  CFW_SELF_NOT_IN_WW = 17,
  CFW_UNKNOWN_WORLD = 18,
  CFW_UNKNOWN_ATOM = 19,
  CFW_TOO_MANY_WORLDS = 20,
  CFW_NOT_RECURSIVE = 21,
  CFW_NOT_RECURSIVE_STRUCTURE = 22,
  CFW_BOUNDS_TOO_LARGE = 23,
  CFW_UNKNOWN_SCHEMA = 24,
  CFW_IO = 25,
  CFW_INTERNAL = 26,
  CFW_BAD_SUBSTITUTION = 27,
  CFW_SIDE_CONDITION_VIOLATED = 28,
  CFW_RULE_MISMATCH = 29,
  CFW_FORWARD_REFERENCE = 30,
  CFW_SCHEMA_DISABLED = 31
} cfw_status;

typedef struct cfw_model cfw_model;
typedef struct cfw_structure cfw_structure;

CFW_API const char* cfw_version(void);
/* Message of the last failure on this thread ("" if none). */
CFW_API const char* cfw_last_error(void);
/* Byte offset into the offending formula or JSON text, or -1. */
CFW_API long cfw_last_error_position(void);
CFW_API const char* cfw_status_name(cfw_status s);
CFW_API void cfw_string_free(char* s);
/* FNV-1a 64-bit hash as 16 hex digits. */
CFW_API cfw_status cfw_content_hash(const char* bytes, size_t len, char** out);

/* ---- causal models */
CFW_API cfw_status cfw_model_from_json(const char* json, cfw_model** out);
CFW_API void cfw_model_free(cfw_model* m);
/* context "U=0,V=1"; intervention "X1<-1; X2<-0" or NULL/"".
 * Result: {"solutions": [[0,1,1], ...], "text": ["(0,1,1)", ...]} */
CFW_API cfw_status cfw_model_solve(const cfw_model* m, const char* context, const char* intervention, char** out);
/* {"class": "Trec"|"Tun-only"|"T-only", "recursive", "order"|"cycle", "unique", "witness"} */
CFW_API cfw_status cfw_model_classify(const cfw_model* m, char** out);
/* *truth is 1 or 0. */
CFW_API cfw_status cfw_model_eval(const cfw_model* m, const char* context, const char* formula, int* truth);
/* The model as JSON (same format as the input files). */
CFW_API cfw_status cfw_model_to_json(const cfw_model* m, char** out);

/* ---- counterfactual structures */
CFW_API cfw_status cfw_structure_load(const char* json, cfw_structure** out);
CFW_API void cfw_structure_free(cfw_structure* s);
/* {"acceptable", "full", "total", "recursive", "recursive_global", "world_orders", "global_order"} */
CFW_API cfw_status cfw_structure_classify(const cfw_structure* s, char** out);
CFW_API cfw_status cfw_structure_eval(const cfw_structure* s, const char* world, const char* formula, int* truth);
/* {"worlds": [ids]} */
CFW_API cfw_status cfw_structure_closest(const cfw_structure* s, const char* world, const char* formula, char** out);

/* ---- formulas. m may be NULL; with a model the formula is also checked
 * against its signature. {"formula", "class", "well_formed", "diagnostics"} */
CFW_API cfw_status cfw_formula_classify(const char* formula, const cfw_model* m, char** out);

/* ---- translations */
/* {"structure": <structure JSON>, "context_worlds": {"U=0": world id, ...}}.
   certify != 0 adds "certificate": {"ok", "checked", "first"} from the
   depth-1 LPROP corpus, pairing each context u with w_u. */
CFW_API cfw_status cfw_model_to_structure(const cfw_model* m, int certify, char** out);
/* {"model": <model JSON>} plus "certificate" as above, pairing every
   context with `world`. per_world != 0: one context per world (exogenous W),
   and the certificate pairs context i with world i. */
CFW_API cfw_status cfw_structure_to_model(const cfw_structure* s, const char* world, int per_world, int certify,
                                          char** out);

/* ---- axiom lab, proofs, golden suite. Requests and reports are JSON;
 * see README for the fields. */
CFW_API cfw_status cfw_axcheck(const char* request, char** report);
CFW_API cfw_status cfw_proof_check(const char* proof_json, char** report);
CFW_API cfw_status cfw_paper_suite(const char* options, char** report);

#ifdef __cplusplus
}
#endif

#endif /* CFWORLD_H */
