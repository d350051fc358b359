#ifndef SPHERE_DISTORT_H
#define SPHERE_DISTORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SdStatus {
  SD_STATUS_OK = 0,
  SD_STATUS_NULL_POINTER = 1,
  SD_STATUS_INVALID_ARGUMENT = 2,
  SD_STATUS_DEGENERATE = 3,
  SD_STATUS_GLUING = 4,
  SD_STATUS_PARSE = 5,
  SD_STATUS_INVARIANT = 6,
  SD_STATUS_BUFFER_TOO_SMALL = 7,
  SD_STATUS_PANIC = 8,
} SdStatus;

typedef enum SdFamilyKind {
  SD_FAMILY_KIND_CHD = 0,
  SD_FAMILY_KIND_FINF = 1,
  SD_FAMILY_KIND_FK = 2,
  SD_FAMILY_KIND_FK_STAR = 3,
  SD_FAMILY_KIND_GK = 4,
  SD_FAMILY_KIND_GK_STAR = 5,
  SD_FAMILY_KIND_G1 = 6,
  SD_FAMILY_KIND_G1_STAR = 7,
  SD_FAMILY_KIND_GINF = 8,
  SD_FAMILY_KIND_IDENTITY = 9,
} SdFamilyKind;

typedef enum SdGeometry {
  SD_GEOMETRY_SPHERICAL = 0,
  SD_GEOMETRY_EUCLIDEAN = 1,
} SdGeometry;

/**
 * Opaque triangle complex.
 */
typedef struct SdComplex SdComplex;

/**
 * A side transform; `k` is read only by the `k`-indexed kinds.
 */
typedef struct SdFamily {
  enum SdFamilyKind kind;
  double k;
} SdFamily;

/**
 * Side `side_a` of triangle `tri_a` glued to side `side_b` of `tri_b`,
 * with opposite directions unless `same_direction` is set.
 */
typedef struct SdGluing {
  size_t tri_a;
  size_t side_a;
  size_t tri_b;
  size_t side_b;
  bool same_direction;
} SdGluing;

/**
 * Summary of a distortion scan. `r`, `phi`, `t` locate the minimum.
 */
typedef struct SdScanResult {
  double infimum;
  double threshold;
  double margin;
  double r;
  double phi;
  double t;
  uint64_t evaluated;
  uint64_t violations;
} SdScanResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *sd_version(void);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *sd_last_error_message(void);

/**
 * `D(F, Δ)` for the triangle with the given sides.
 */
enum SdStatus sd_angle_distortion(struct SdFamily fam,
                                  enum SdGeometry geometry,
                                  const double *sides,
                                  double *out_d);

/**
 * Build a complex from `3 * n_faces` side lengths and `n_gluings` gluings.
 */
enum SdStatus sd_complex_new(enum SdGeometry geometry,
                             const double *sides,
                             size_t n_faces,
                             const struct SdGluing *gluings,
                             size_t n_gluings,
                             struct SdComplex **out);

/**
 * Parse a complex from fixture text.
 */
enum SdStatus sd_complex_parse(const char *src, struct SdComplex **out);

/**
 * One of the named complexes: weierstrass, tetrahedron, octahedron,
 * icosahedron, octa2, icosa2, icosa3.
 */
enum SdStatus sd_complex_builtin(const char *name, struct SdComplex **out);

/**
 * Release a complex. Null is ignored.
 */
void sd_complex_free(struct SdComplex *c);

/**
 * Vertex, edge and face counts and the Euler characteristic. Any output
 * pointer may be null.
 */
enum SdStatus sd_complex_counts(const struct SdComplex *c,
                                size_t *vertices,
                                size_t *edges,
                                size_t *faces,
                                int64_t *euler);

/**
 * Total angle at each vertex into `out[0..cap]`. `*len` receives the
 * vertex count; a short buffer gives `BufferTooSmall` and writes nothing.
 */
enum SdStatus sd_complex_total_angles(const struct SdComplex *c,
                                      double *out,
                                      size_t cap,
                                      size_t *len);

/**
 * `|K·area + Σ(2π − θ_v) − 2πχ|` for a closed complex.
 */
enum SdStatus sd_complex_gauss_bonnet(const struct SdComplex *c, double *residual);

/**
 * The flat complex obtained by transforming every side length.
 */
enum SdStatus sd_complex_transform(const struct SdComplex *c,
                                   struct SdFamily fam,
                                   struct SdComplex **out);

/**
 * Lower bound scan of `D(F, Δ)` over circumradii below `r_max`, with the
 * default refinement settings.
 */
enum SdStatus sd_scan_infimum(struct SdFamily fam,
                              double r_max,
                              size_t n_r,
                              size_t n_phi,
                              size_t n_t,
                              uint64_t seed,
                              struct SdScanResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHERE_DISTORT_H */
