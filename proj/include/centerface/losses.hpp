#pragma once

#include "centerface/decoder.hpp"
#include "centerface/target_codec.hpp"

namespace centerface {

struct LossConfig {
    float alpha = 2.0f;  // focal exponent on the prediction
    float beta = 4.0f;   // down-weighting exponent on soft negatives
    float lambda_off = 1.0f;
    float lambda_box = 0.1f;
    float lambda_lm = 0.1f;
    float smooth_l1_delta = 1.0f;  // 0 selects plain L1
};

// Penalty-reduced pixel-wise focal loss over the center heatmap, normalized
// by the number of positive (target == 1) pixels, floored at 1. grad holds
// d(loss)/d(pred) including that normalization.
struct FocalResult {
    double loss = 0.0;
    Grid2D grad;
};
FocalResult focal_center_loss(const Grid2D& pred, const Grid2D& target, const LossConfig& cfg);

// Huber: 0.5 d^2 / delta for |d| < delta, else |d| - 0.5 delta. delta = 0 is
// plain L1 (gradient sign(d), 0 at d = 0).
struct SmoothL1 {
    double loss = 0.0;
    double grad = 0.0;  // d(loss)/d(pred)
};
SmoothL1 smooth_l1(double pred, double target, double delta);

// Weighted total over all four heads. Regression terms are evaluated only at
// positive cells (landmarks additionally gated by each cell's landmark mask)
// and mean-normalized per element with a floor of one. Gradient grids are of
// the weighted total.
struct LossReport {
    double total = 0.0;
    double l_center = 0.0;
    double l_off = 0.0;
    double l_box = 0.0;
    double l_lm = 0.0;
    Grid2D grad_heatmap;
    Grid3D grad_offset;
    Grid3D grad_size;
    Grid3D grad_landmarks;
};
LossReport total_loss(const OutputHeads& heads, const TargetMaps& targets, const LossConfig& cfg);

}  // namespace centerface
