#pragma once

#include <vector>

#include "centerface/geometry.hpp"
#include "centerface/grid.hpp"
#include "centerface/target_codec.hpp"

namespace centerface {

// Model outputs after any activation: heatmap values are probabilities.
struct OutputHeads {
    Grid2D heatmap;
    Grid3D size;       // 2 x h x w
    Grid3D offset;     // 2 x h x w
    Grid3D landmarks;  // 10 x h x w
    int stride = kStride;
};

struct DecodeConfig {
    float score_threshold = 0.05f;  // evaluation default; ~0.35 reads better on overlays
    int top_k = 200;
    int peak_window = 3;  // odd local-max neighborhood
};

struct Peak {
    int x = 0;
    int y = 0;
    float score = 0.0f;
};

// Cells that are local maxima of the peak_window neighborhood (ties all kept,
// so plateaus yield several peaks) and clear score_threshold. Sorted by score
// descending, then y, then x; truncated to top_k.
std::vector<Peak> extract_peaks(const Grid2D& heatmap, const DecodeConfig& cfg);

// Peaks -> detections in network-input coordinates. Boxes are clamped to
// [0,input_w] x [0,input_h]; landmarks are left unclamped. Scores inherit the
// peak ordering.
std::vector<Detection> decode_detections(const OutputHeads& heads, int input_w, int input_h,
                                         const DecodeConfig& cfg);

// Undo the preprocessing geometry: subtract the recorded pad shift, then
// divide by scale. Applies to boxes and landmarks alike.
std::vector<Detection> unpad_rescale(std::vector<Detection> dets, float scale, Point2f pad);

}  // namespace centerface
