#ifndef POLYPROD_H
#define POLYPROD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  PP_STATUS_NULL_POINTER = 1,
  PP_STATUS_INVALID_INPUT = 2,
  PP_STATUS_PARSE_ERROR = 3,
  PP_STATUS_BUDGET_EXCEEDED = 4,
  PP_STATUS_VERIFICATION_MISMATCH = 5,
  PP_STATUS_INTERNAL = 6,
  PP_STATUS_BUFFER_TOO_SMALL = 7,
} PpStatus;

// A simplicial complex.
typedef struct PpComplex PpComplex;

// A CW pair model.
typedef struct PpPair PpPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a complex on `m` vertices from generating faces given as bitmasks
// (bit `v - 1` set for vertex `v`).
enum PpStatus pp_complex_from_maximal_faces(size_t m,
                                            const uint32_t *faces,
                                            size_t n_faces,
                                            struct PpComplex **out);

// Parses the text (`m` / `face` lines) or JSON complex format.
enum PpStatus pp_complex_parse(const char *text, struct PpComplex **out);

void pp_complex_free(struct PpComplex *complex);

enum PpStatus pp_complex_num_vertices(const struct PpComplex *complex, size_t *out);

// Writes `f_0 .. f_dim` to `buf`. `*len` receives the length even when
// `cap` is too small.
enum PpStatus pp_complex_f_vector(const struct PpComplex *complex,
                                  uint64_t *buf,
                                  size_t cap,
                                  size_t *len);

// Writes `h_0 .. h_(dim+1)`, with the same buffer convention as [`pp_complex_f_vector`].
enum PpStatus pp_complex_h_vector(const struct PpComplex *complex,
                                  int64_t *buf,
                                  size_t cap,
                                  size_t *len);

// `(D^(n+1), S^n)`.
enum PpStatus pp_pair_disk_sphere(size_t n, struct PpPair **out);

// `(CA, A)` for a complex `A` based at `vertex`.
enum PpStatus pp_pair_cone_from_complex(const struct PpComplex *complex,
                                        size_t vertex,
                                        struct PpPair **out);

// `(X, x)` for a complex `X` based at `vertex`.
enum PpStatus pp_pair_based_from_complex(const struct PpComplex *complex,
                                         size_t vertex,
                                         struct PpPair **out);

void pp_pair_free(struct PpPair *pair);

// Homology of the polyhedral product as a JSON array of `{"degree", "betti", "torsion"}`.
// `n_pairs` is 1 (used for every vertex) or the vertex count.
enum PpStatus pp_moment_angle_homology_json(const struct PpComplex *complex,
                                            const struct PpPair *const *pairs,
                                            size_t n_pairs,
                                            bool reduced,
                                            char **out);

// Reduced homology of `Z(K;(D^(n+1),S^n))` from full subcomplexes, as JSON
// `{"total": .., "summands": [..]}`.
enum PpStatus pp_hochster_json(const struct PpComplex *complex, size_t n, char **out);

// Compares the homology with the sum over full subcomplexes. Returns
// `PP_STATUS_VERIFICATION_MISMATCH` when they differ; `*verified` is set in both cases.
enum PpStatus pp_split_check(const struct PpComplex *complex,
                             const struct PpPair *const *pairs,
                             size_t n_pairs,
                             bool *verified);

// Stanley–Reisner Hilbert series with generators in `degree`, as JSON
// `{"num", "den", "expansion"}` with `trunc` expansion terms.
enum PpStatus pp_sr_hilbert_json(const struct PpComplex *complex,
                                 size_t degree,
                                 size_t trunc,
                                 char **out);

void pp_string_free(char *s);

// Message for the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *pp_last_error_message(void);

const char *pp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYPROD_H */
