#ifndef SPDENOISE_H
#define SPDENOISE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Default initial window side for `spd_denoise`.
#define SPD_DEFAULT_W_INIT 3

// Default window growth step for `spd_denoise`.
#define SPD_DEFAULT_H 2

// Default maximum window side for `spd_denoise`.
#define SPD_DEFAULT_W_MAX 9

// Result code of every `spd_*` call.
typedef enum SpdStatus {
  SPD_STATUS_OK = 0,
  // A required pointer argument was NULL.
  SPD_STATUS_NULL_POINTER = 1,
  // An argument was out of range or malformed.
  SPD_STATUS_INVALID_ARGUMENT = 2,
  // PNM bytes could not be decoded.
  SPD_STATUS_PARSE = 3,
  // Images passed together have different shapes.
  SPD_STATUS_DIMENSION_MISMATCH = 4,
  // The filter name is not recognised.
  SPD_STATUS_UNKNOWN_FILTER = 5,
  // The metric is not defined for these inputs.
  SPD_STATUS_UNDEFINED_METRIC = 6,
  // An internal panic was caught.
  SPD_STATUS_PANIC = 7,
} SpdStatus;

// Opaque image handle. Free with `spd_image_free`.
typedef struct SpdImage SpdImage;

// Output of `spd_metrics`.
typedef struct SpdMetrics {
  double mse;
  // `INFINITY` when the images are identical.
  double psnr_db;
  // `INFINITY` for an exact restoration, `NAN` when no noisy image was given.
  double ief;
} SpdMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never NULL.
const char *spd_status_message(enum SpdStatus status);

// Detail of the most recent failure on this thread, or an empty string.
// The pointer stays valid until the next `spd_*` call on the same thread.
const char *spd_last_error_message(void);

// Copies `len` interleaved samples into a new image.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum SpdStatus spd_image_new(size_t width,
                             size_t height,
                             size_t channels,
                             const uint8_t *data,
                             size_t len,
                             struct SpdImage **out);

// Decodes binary PGM (P5) or PPM (P6) bytes.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum SpdStatus spd_image_load_pnm(const uint8_t *data, size_t len, struct SpdImage **out);

// Encodes an image as PGM or PPM. Release the buffer with `spd_buffer_free`.
//
// # Safety
// `image` must be a live handle; `out_data` and `out_len` must be writable.
enum SpdStatus spd_image_save_pnm(const struct SpdImage *image,
                                  uint8_t **out_data,
                                  size_t *out_len);

// Frees a buffer returned by `spd_image_save_pnm`. NULL is ignored.
//
// # Safety
// `data` and `len` must come from one `spd_image_save_pnm` call and the
// buffer must not have been freed already.
void spd_buffer_free(uint8_t *data, size_t len);

// Releases an image handle. NULL is ignored.
//
// # Safety
// `image` must come from this library and must not be used afterwards.
void spd_image_free(struct SpdImage *image);

// Width in pixels, or 0 for NULL.
//
// # Safety
// `image` must be NULL or a live handle.
size_t spd_image_width(const struct SpdImage *image);

// Height in pixels, or 0 for NULL.
//
// # Safety
// `image` must be NULL or a live handle.
size_t spd_image_height(const struct SpdImage *image);

// 1 for grayscale, 3 for RGB, 0 for NULL.
//
// # Safety
// `image` must be NULL or a live handle.
size_t spd_image_channels(const struct SpdImage *image);

// Borrowed pointer to the interleaved row-major samples, valid while the
// handle lives. Writes the sample count to `out_len` when it is not NULL.
//
// # Safety
// `image` must be NULL or a live handle; `out_len` must be NULL or writable.
const uint8_t *spd_image_data(const struct SpdImage *image, size_t *out_len);

// Corrupts a copy of `image` with salt-and-pepper noise.
//
// # Safety
// `image` must be a live handle and `out` must be writable.
enum SpdStatus spd_inject_noise(const struct SpdImage *image,
                                double density,
                                double salt_fraction,
                                uint64_t seed,
                                struct SpdImage **out);

// Restores `image` with the named filter: "mf", "amf", "mdbutmf",
// "mdbptgmf", "awmf-approx" or "pa".
//
// # Safety
// `image` must be a live handle, `filter` a NUL-terminated string and
// `out` writable.
enum SpdStatus spd_denoise(const struct SpdImage *image,
                           const char *filter,
                           size_t w_init,
                           size_t h,
                           size_t w_max,
                           struct SpdImage **out);

// Compares `restored` with `original`. `noisy` may be NULL, in which case
// `ief` is NAN.
//
// # Safety
// `original` and `restored` must be live handles, `noisy` NULL or a live
// handle, and `out` writable.
enum SpdStatus spd_metrics(const struct SpdImage *original,
                           const struct SpdImage *restored,
                           const struct SpdImage *noisy,
                           struct SpdMetrics *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPDENOISE_H */
