#pragma once

#include <array>
#include <string>
#include <vector>

#include "centerface/annotations.hpp"
#include "centerface/grid.hpp"

namespace centerface {

// Output stride: heads live on a grid 4x coarser than the input.
inline constexpr int kStride = 4;
// Faces with a smaller min side (in input pixels) are not encoded.
inline constexpr float kMinFacePx = 8.0f;

struct PositiveCell {
    int face_id = 0;  // index into the face list passed to encode_targets
    int gx = 0;
    int gy = 0;
    bool landmark_mask = false;  // landmark channels supervised at this cell
};

struct TargetMaps {
    Grid2D heatmap;    // in [0,1], exactly 1 at positive cells
    Grid3D offset;     // 2 planes: sub-cell center offsets, each in [0,1)
    Grid3D size;       // 2 planes: log(w/stride), log(h/stride)
    Grid3D landmarks;  // 10 planes: per point (x,y) offsets from center / box size
    std::vector<PositiveCell> positives;
};

// Largest corner displacement (grid units) that keeps IoU >= min_overlap with
// a box of the given grid-unit dims, taking the worst of the translate,
// shrink and grow regimes: smallest admissible root of each quadratic, then
// the minimum of the three, floored at 0. Throws std::invalid_argument for
// non-positive dims or min_overlap outside [0,1].
float gaussian_radius(float box_w, float box_h, float min_overlap = 0.7f);

// Elementwise-max splat of exp(-(dx^2+dy^2) / (2 sigma^2)), sigma = radius/3,
// over a (2*ceil(radius)+1)^2 window clipped to the map. The center cell gets
// exactly 1. radius = 0 degenerates to a single-cell point mass.
void splat_gaussian(Grid2D& heatmap, int cx, int cy, float radius);

// Build training targets on the stride-4 grid. image_w/image_h must be
// positive multiples of kStride. Faces under kMinFacePx or with their center
// cell off the grid are skipped. When two faces land on the same cell the
// later one wins the cell entirely (regression planes and positives entry).
TargetMaps encode_targets(const std::vector<FaceAnnotation>& faces, int image_w, int image_h);

// Per-cell regression bundle, as stored in the maps / emitted by a model.
struct CellTargets {
    float offset_x = 0.0f;
    float offset_y = 0.0f;
    float log_w = 0.0f;
    float log_h = 0.0f;
    std::array<float, 2 * kLandmarkCount> landmarks{};  // (x,y) interleaved per point
};

CellTargets cell_targets(const TargetMaps& maps, int gx, int gy);

struct DecodedFace {
    Box box;
    LandmarkSet landmarks;  // all valid
};

// Inverse of the per-face encoding at one grid cell. No bounds clamping here.
DecodedFace decode_single(const CellTargets& t, int gx, int gy, int stride = kStride);

// Versioned little-endian binary container (magic "CFTM"): dims, the four
// plane groups, then the positive-cell table.
void save_target_maps(const TargetMaps& maps, const std::string& path);
TargetMaps load_target_maps(const std::string& path);

}  // namespace centerface
