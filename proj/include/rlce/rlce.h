/*
 * rlce: compressed longest-common-extension queries over run-length
 * straight-line programs built by recompression.
 *
 * C interface. Every handle is opaque; every call returns an rlce_status and
 * the text of the most recent failure on the calling thread is available
 * from rlce_last_error(). Grammar handles are immutable after construction
 * and may be queried concurrently.
 */
#ifndef RLCE_RLCE_H
#define RLCE_RLCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define RLCE_API __declspec(dllexport)
#else
#  define RLCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rlce_status {
  RLCE_OK = 0,
  RLCE_ERR_INVALID_INPUT = 1, /* malformed file or argument */
  RLCE_ERR_OUT_OF_RANGE = 2,  /* position or length outside the text */
  RLCE_ERR_OVERFLOW = 3,      /* a length exceeds 64 bits */
  RLCE_ERR_INTERNAL = 4,      /* a construction invariant failed */
  RLCE_ERR_IO = 5             /* file could not be opened or written */
} rlce_status;

typedef enum rlce_schedule {
  RLCE_SCHEDULE_SIMTTOG = 0,
  RLCE_SCHEDULE_GTOG = 1
} rlce_schedule;

typedef struct rlce_grammar rlce_grammar;
typedef struct rlce_lz77 rlce_lz77;

RLCE_API const char* rlce_last_error(void);

/* Construction. level_log_path may be NULL; otherwise one line per
 * recompression level is written there. */
RLCE_API rlce_status rlce_build_from_text(const uint8_t* data, size_t len, const char* level_log_path,
                                          rlce_grammar** out);
RLCE_API rlce_status rlce_build_from_slp_file(const char* slp_path, rlce_schedule schedule,
                                              const char* level_log_path, rlce_grammar** out);
RLCE_API void rlce_grammar_free(rlce_grammar* g);

/* Grammar files. rlce_grammar_load rejects format errors (message names the
 * line); semantic problems are reported by rlce_grammar_validate. */
RLCE_API rlce_status rlce_grammar_load(const char* path, rlce_grammar** out);
RLCE_API rlce_status rlce_grammar_save(const rlce_grammar* g, const char* path);

RLCE_API uint64_t rlce_grammar_size(const rlce_grammar* g);
RLCE_API uint64_t rlce_grammar_text_length(const rlce_grammar* g);
RLCE_API uint64_t rlce_grammar_height(const rlce_grammar* g);

/* Calls report(message, user) once per violation; *count receives the
 * number of violations (0 when valid). report may be NULL. */
RLCE_API rlce_status rlce_grammar_validate(const rlce_grammar* g, void (*report)(const char*, void*), void* user,
                                           size_t* count);

/* Queries. Positions are 1-based. steps may be NULL. */
RLCE_API rlce_status rlce_lce(const rlce_grammar* g, uint64_t i, uint64_t j, uint64_t* length, uint64_t* steps);
/* Writes len bytes of T[i..i+len-1] to buf. */
RLCE_API rlce_status rlce_extract(const rlce_grammar* g, uint64_t i, uint64_t len, uint8_t* buf);

/* *equal = 1 when the grammar expands to exactly data[0..len); otherwise 0
 * and *mismatch receives the first differing 1-based offset (len+1 or
 * N+1 on a length mismatch). */
RLCE_API rlce_status rlce_verify_text(const rlce_grammar* g, const uint8_t* data, size_t len, int* equal,
                                      uint64_t* mismatch);

/* LZ77 factorization without self-reference. */
RLCE_API rlce_status rlce_lz77_factorize(const uint8_t* data, size_t len, rlce_lz77** out);
RLCE_API void rlce_lz77_free(rlce_lz77* fz);
RLCE_API uint64_t rlce_lz77_count(const rlce_lz77* fz);
RLCE_API rlce_status rlce_lz77_factor(const rlce_lz77* fz, uint64_t k, uint64_t* start, uint64_t* len);

/* ratio = g / (z * (1 + log2(max(2, N / z)))). Fails when N differs. */
RLCE_API rlce_status rlce_size_bound_ratio(const rlce_grammar* g, const rlce_lz77* fz, double* ratio);

#ifdef __cplusplus
}
#endif

#endif /* RLCE_RLCE_H */
