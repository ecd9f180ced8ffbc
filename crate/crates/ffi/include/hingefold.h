#ifndef HINGEFOLD_H
#define HINGEFOLD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  // Verification ran and rejected the input.
  HF_STATUS_REJECTED = 1,
  // Malformed or out-of-range input.
  HF_STATUS_INVALID = 2,
  HF_STATUS_NULL_ARGUMENT = 3,
  // A panic was caught at the boundary.
  HF_STATUS_INTERNAL = 4,
} HfStatus;

// Unhinged mutual dissection of two polygons.
typedef struct HfChart HfChart;

// Hinged figure with its configurations and targets.
typedef struct HfDocument HfDocument;

// Edge-connected set of grid cells.
typedef struct HfPolyomino HfPolyomino;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next `hf_*` call on the same thread.
const char *hf_last_error(void);

// Library version, static.
const char *hf_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void hf_string_free(char *s);

// Parses a `#`/`.` grid, one row per line, top row first.
//
// # Safety
// `grid` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_polyomino_from_grid(const char *grid, struct HfPolyomino **out);

// Seeded random polyomino with `cells` cells.
//
// # Safety
// `out` must be writable.
enum HfStatus hf_polyomino_random(int64_t cells, uint64_t seed, struct HfPolyomino **out);

// Cell count, 0 for a null handle.
//
// # Safety
// `p` must be null or a live polyomino handle.
size_t hf_polyomino_cell_count(const struct HfPolyomino *p);

// Grid text of the polyomino.
//
// # Safety
// `p` must be a live polyomino handle; `out` must be writable.
enum HfStatus hf_polyomino_to_grid(const struct HfPolyomino *p, char **out);

// # Safety
// `p` must be null or a live polyomino handle, not used afterwards.
void hf_polyomino_free(struct HfPolyomino *p);

// Folds the universal triangle chain onto `p`.
//
// # Safety
// `p` must be a live polyomino handle; `out` must be writable.
enum HfStatus hf_fold(const struct HfPolyomino *p, struct HfDocument **out);

// Hinged dissection between two polyominoes with the same cell count.
//
// # Safety
// `a` and `b` must be live polyomino handles; `out` must be writable.
enum HfStatus hf_dissect(const struct HfPolyomino *a,
                         const struct HfPolyomino *b,
                         struct HfDocument **out);

// Reads an HDJ document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_document_from_json(const char *json, struct HfDocument **out);

// Writes the document as HDJ.
//
// # Safety
// `d` must be a live document handle; `out` must be writable.
enum HfStatus hf_document_to_json(const struct HfDocument *d, char **out);

// Piece count, 0 for a null handle.
//
// # Safety
// `d` must be null or a live document handle.
size_t hf_document_piece_count(const struct HfDocument *d);

// Number of configurations, 0 for a null handle.
//
// # Safety
// `d` must be null or a live document handle.
size_t hf_document_configuration_count(const struct HfDocument *d);

// Verifies every configuration against its target. With `tolerance > 0` all
// configurations are checked numerically at that tolerance; otherwise exact
// configurations are checked exactly and approximate ones at their own
// tolerance. Returns `Rejected` when any configuration fails.
//
// # Safety
// `d` must be a live document handle.
enum HfStatus hf_document_verify(const struct HfDocument *d, double tolerance);

// SVG drawing of configuration `index`.
//
// # Safety
// `d` must be a live document handle; `out` must be writable.
enum HfStatus hf_document_render_svg(const struct HfDocument *d, size_t index, char **out);

// # Safety
// `d` must be null or a live document handle, not used afterwards.
void hf_document_free(struct HfDocument *d);

// Mutual dissection of two equal-area polygons given as JSON vertex lists,
// through stacked rectangles of width `width` (a rational such as `"3/2"`).
//
// # Safety
// All strings must be nul-terminated; `out` must be writable.
enum HfStatus hf_chart_new(const char *polygon_a,
                           const char *polygon_b,
                           const char *width,
                           struct HfChart **out);

// Piece count, 0 for a null handle.
//
// # Safety
// `c` must be null or a live chart handle.
size_t hf_chart_piece_count(const struct HfChart *c);

// Checks both assemblies; the target side at `tolerance` relative to its area.
//
// # Safety
// `c` must be a live chart handle.
enum HfStatus hf_chart_verify(const struct HfChart *c, double tolerance);

// Writes the chart as JSON.
//
// # Safety
// `c` must be a live chart handle; `out` must be writable.
enum HfStatus hf_chart_to_json(const struct HfChart *c, char **out);

// # Safety
// `c` must be null or a live chart handle, not used afterwards.
void hf_chart_free(struct HfChart *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HINGEFOLD_H */
