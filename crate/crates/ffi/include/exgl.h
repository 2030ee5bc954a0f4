#ifndef EXGL_H
#define EXGL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every call.
typedef enum ExglStatus {
  EXGL_STATUS_OK = 0,
  EXGL_STATUS_NULL_POINTER = 1,
  EXGL_STATUS_INVALID_UTF8 = 2,
  EXGL_STATUS_ARGUMENT = 3,
  EXGL_STATUS_PRECONDITION = 4,
  EXGL_STATUS_UNSUPPORTED = 5,
  EXGL_STATUS_CAPACITY = 6,
  EXGL_STATUS_NOT_INVERTIBLE = 7,
  EXGL_STATUS_PARSE = 8,
  EXGL_STATUS_USAGE = 9,
  EXGL_STATUS_SAMPLING = 10,
  EXGL_STATUS_INVARIANT = 11,
  EXGL_STATUS_IO = 12,
  EXGL_STATUS_PANIC = 13,
} ExglStatus;

// A ring, degree and ideal. Create with [`exgl_context_new`].
typedef struct ExglContext ExglContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. Valid until
// the next call on the same thread.
const char *exgl_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void exgl_string_free(char *s);

// Creates a context for `GL_n` over the ring described by `ring_spec`, with
// the ideal generated by `ideal[0..ideal_len]` (a null `ideal` with length 0
// gives the zero ideal).
//
// # Safety
// `ring_spec` must be a nul-terminated string, `ideal` must point to
// `ideal_len` values and `out` must be writable.
enum ExglStatus exgl_context_new(const char *ring_spec,
                                 size_t n,
                                 const uint32_t *ideal,
                                 size_t ideal_len,
                                 struct ExglContext **out);

// Releases a context. Null is ignored.
//
// # Safety
// `ctx` must come from [`exgl_context_new`] and not have been freed.
void exgl_context_free(struct ExglContext *ctx);

// Ring order and the ideal's size.
//
// # Safety
// `ctx` must be a live context; `order` and `ideal_size` must be writable.
enum ExglStatus exgl_context_info(const struct ExglContext *ctx,
                                  uint32_t *order,
                                  size_t *ideal_size);

// Sets `*member` to whether `matrix` lies in `C_n(R, I)`.
//
// # Safety
// `ctx` must be a live context, `matrix` a nul-terminated string and
// `member` writable.
enum ExglStatus exgl_congruence_member(const struct ExglContext *ctx,
                                       const char *matrix,
                                       bool *member);

// `t_ij(x)^sigma` as a relative word: `{"word": .., "letters": ..}`.
//
// # Safety
// `ctx` must be a live context, `sigma` a nul-terminated string and `out` writable.
enum ExglStatus exgl_factor_conj_transvection(const struct ExglContext *ctx,
                                              const char *sigma,
                                              size_t i,
                                              size_t j,
                                              uint32_t x,
                                              char **out);

// `[t_ij(x), sigma]` for `sigma` in `C_n(R, I)` as a relative word.
//
// # Safety
// As [`exgl_factor_conj_transvection`].
enum ExglStatus exgl_factor_commutator(const struct ExglContext *ctx,
                                       const char *sigma,
                                       size_t i,
                                       size_t j,
                                       uint32_t x,
                                       char **out);

// `t_kl(a sigma_ij b)` as a product of conjugates of `sigma`.
//
// # Safety
// As [`exgl_factor_conj_transvection`].
enum ExglStatus exgl_extract_entry(const struct ExglContext *ctx,
                                   const char *sigma,
                                   size_t i,
                                   size_t j,
                                   size_t k,
                                   size_t l,
                                   uint32_t a,
                                   uint32_t b,
                                   char **out);

// `t_kl(a (c sigma_ii - sigma_jj c) b)` as a product of conjugates of `sigma`.
//
// # Safety
// As [`exgl_factor_conj_transvection`].
enum ExglStatus exgl_extract_diagonal(const struct ExglContext *ctx,
                                      const char *sigma,
                                      size_t i,
                                      size_t j,
                                      size_t k,
                                      size_t l,
                                      uint32_t a,
                                      uint32_t b,
                                      uint32_t c_elem,
                                      char **out);

// Sandwich certificate for a JSON array of matrices.
//
// # Safety
// As [`exgl_factor_conj_transvection`].
enum ExglStatus exgl_classify(const struct ExglContext *ctx, const char *generators, char **out);

// Runs a suite from a JSON config
// `{"ring", "n", "ideal", "seed", "samples", "cap"}` and writes the report.
// A suite whose checks fail still returns `Ok`; inspect `"passed"`.
//
// # Safety
// `name` and `config` must be nul-terminated strings and `out` writable.
enum ExglStatus exgl_run_suite(const char *name, const char *config, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXGL_H */
