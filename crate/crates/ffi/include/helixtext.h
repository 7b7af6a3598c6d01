#ifndef HELIXTEXT_H
#define HELIXTEXT_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HtDirection {
  HT_DIRECTION_FORWARD = 0,
  HT_DIRECTION_BACKWARD = 1,
} HtDirection;

typedef enum HtNullModel {
  HT_NULL_MODEL_SHUFFLE_STREAM = 0,
  HT_NULL_MODEL_RESAMPLE_LETTERS = 1,
} HtNullModel;

// Result of every fallible call. Values 2-4 match the CLI exit codes.
typedef enum HtStatus {
  HT_STATUS_OK = 0,
  // Malformed input data.
  HT_STATUS_VALIDATION = 2,
  // Well-formed inputs a pipeline stage cannot use (e.g. too few bases,
  // class/letter count mismatch).
  HT_STATUS_PRECONDITION = 3,
  HT_STATUS_IO = 4,
  HT_STATUS_NULL_POINTER = 5,
  HT_STATUS_INVALID_UTF8 = 6,
  // A Rust panic was caught at the boundary.
  HT_STATUS_PANIC = 7,
} HtStatus;

// Opaque word list.
typedef struct HtDictionary HtDictionary;

// Opaque validated genome.
typedef struct HtGenome HtGenome;

// Opaque class -> letter substitution table.
typedef struct HtMapping HtMapping;

// Turn windowing parameters; coordinates are 1-based.
typedef struct HtWindowSpec {
  uint64_t anchor;
  uint64_t count;
  uint64_t size;
  enum HtDirection direction;
} HtWindowSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *ht_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void ht_string_free(char *s);

// Parses FASTA (first record) or a raw base string.
//
// # Safety
// `data` must point to `len` readable bytes; `out` must be writable.
enum HtStatus ht_genome_parse(const uint8_t *data,
                              uintptr_t len,
                              bool skip_ambiguous,
                              struct HtGenome **out);

// Reads a FASTA file from `path`.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum HtStatus ht_genome_open(const char *path, bool skip_ambiguous, struct HtGenome **out);

// Number of bases, or 0 for NULL.
//
// # Safety
// `genome` must be NULL or a live handle.
uintptr_t ht_genome_len(const struct HtGenome *genome);

// # Safety
// `genome` must be NULL or a handle not yet freed.
void ht_genome_free(struct HtGenome *genome);

// Builds the rank substitution from the genome's turn classes and a letter
// table. With `corpus == NULL` the built-in `fig1b` letter table is used;
// `omit` is a comma-separated letter list (NULL means `C,Q,V,X,Z`).
//
// # Safety
// Pointers must be valid as described; `corpus` must have `corpus_len`
// readable bytes when not NULL.
enum HtStatus ht_mapping_build(const struct HtGenome *genome,
                               const struct HtWindowSpec *spec,
                               const uint8_t *corpus,
                               uintptr_t corpus_len,
                               const char *omit,
                               struct HtMapping **out);

// The mapping obtained from the built-in class (`fig1a`) and letter
// (`fig1b`) tables.
//
// # Safety
// `out` must be writable.
enum HtStatus ht_mapping_fixture(struct HtMapping **out);

// Reads a `class<TAB>letter` table.
//
// # Safety
// `tsv` must be NUL-terminated; `out` must be writable.
enum HtStatus ht_mapping_from_tsv(const char *tsv, struct HtMapping **out);

// Writes the mapping as TSV into a new string.
//
// # Safety
// `mapping` must be a live handle; `out` must be writable.
enum HtStatus ht_mapping_to_tsv(const struct HtMapping *mapping, char **out);

// Number of class/letter pairs, or 0 for NULL.
//
// # Safety
// `mapping` must be NULL or a live handle.
uintptr_t ht_mapping_len(const struct HtMapping *mapping);

// # Safety
// `mapping` must be NULL or a handle not yet freed.
void ht_mapping_free(struct HtMapping *mapping);

// Decodes the genome's turn windows into uppercase letters.
//
// # Safety
// Handles must be live; `out` must be writable.
enum HtStatus ht_decode(const struct HtGenome *genome,
                        const struct HtWindowSpec *spec,
                        const struct HtMapping *mapping,
                        char **out);

// Word list from `data` (one word per line).
//
// # Safety
// `data` must point to `len` readable bytes; `out` must be writable.
enum HtStatus ht_dictionary_parse(const uint8_t *data,
                                  uintptr_t len,
                                  uintptr_t min_len,
                                  struct HtDictionary **out);

// The built-in English word list.
//
// # Safety
// `out` must be writable.
enum HtStatus ht_dictionary_builtin(uintptr_t min_len, struct HtDictionary **out);

// # Safety
// `dict` must be NULL or a handle not yet freed.
void ht_dictionary_free(struct HtDictionary *dict);

// Counts exact dictionary hits (overlaps included) in `text`.
//
// # Safety
// `dict` must be live; `text` NUL-terminated; `out_count` writable.
enum HtStatus ht_scan_exact_count(const struct HtDictionary *dict,
                                  const char *text,
                                  uint64_t *out_count);

// Exact and reconstruction hits as TSV rows
// (`kind offset surface word cost ops`). `budget == 0` gives exact hits only.
//
// # Safety
// `dict` must be live; `text` NUL-terminated; `out` writable.
enum HtStatus ht_search_tsv(const struct HtDictionary *dict,
                            const char *text,
                            uintptr_t budget,
                            uintptr_t window_slack,
                            char **out);

// Edit distance (transposition, insertion, deletion, substitution) between
// two uppercase strings.
//
// # Safety
// `a`, `b` NUL-terminated; `out` writable.
enum HtStatus ht_edit_distance(const char *a, const char *b, uintptr_t *out);

// Ordered 4-tuples realizing a class key such as `"0055"` or `"0-0-0-10"`.
//
// # Safety
// `key` NUL-terminated; `out` writable.
enum HtStatus ht_permutation_count(const char *key, uint32_t *out);

// Newline-separated class keys for a window size and per-base maximum.
//
// # Safety
// `out` writable.
enum HtStatus ht_enumerate_classes(uint32_t window_size, uint32_t max_count, char **out);

// Runs the Monte Carlo null model and returns the result as JSON.
//
// # Safety
// Handles must be live; `out_json` writable.
enum HtStatus ht_simulate_json(const struct HtGenome *genome,
                               const struct HtWindowSpec *spec,
                               const struct HtMapping *mapping,
                               const struct HtDictionary *dict,
                               enum HtNullModel model,
                               uintptr_t trials,
                               uint64_t seed,
                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HELIXTEXT_H */
