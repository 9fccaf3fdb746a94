#pragma once

#include <cstdint>
#include <vector>

#include "centerface/grid.hpp"

// Data-parallel inner loops. Each kernel exists twice: the OpenMP version in
// centerface::kernels and a plain serial reference in centerface::kernels::serial.
// The parallel versions split work by output row and keep per-row partials so
// both variants produce bit-identical results; tests and tools/kernel_bench
// compare them.
namespace centerface::kernels {

// Pixel-wise focal terms for one heatmap plane against a splatted target.
// pred is clamped to [eps, 1-eps] before any log. Returns the unnormalized
// loss sum and the count of target==1 pixels; if grad is non-null the
// unnormalized d(sum)/d(pred) is written per pixel (same clamp applied).
struct FocalSums {
    double loss = 0.0;
    long positives = 0;
};
FocalSums focal_plane(const Grid2D& pred, const Grid2D& target, float alpha, float beta,
                      Grid2D* grad);

// Marks cells that are >= every value in their window x window neighborhood,
// clamped at the borders. window must be odd and >= 1. Plateau cells all
// qualify.
std::vector<std::uint8_t> local_max_mask(const Grid2D& plane, int window);

// Bilinear resample through the affine map  dst = src * scale + offset
// (continuous pixel-center coordinates). Source reads outside the image
// contribute zero, so crops past the border come out zero-padded.
Grid3D sample_affine(const Grid3D& src, int out_h, int out_w, float scale_x, float scale_y,
                     float offset_x, float offset_y);

// In place per channel: v = (v * scale[c] - mean[c]) / std[c].
void normalize_channels(Grid3D& image, const float scale[3], const float mean[3],
                        const float stddev[3]);

namespace serial {
FocalSums focal_plane(const Grid2D& pred, const Grid2D& target, float alpha, float beta,
                      Grid2D* grad);
std::vector<std::uint8_t> local_max_mask(const Grid2D& plane, int window);
Grid3D sample_affine(const Grid3D& src, int out_h, int out_w, float scale_x, float scale_y,
                     float offset_x, float offset_y);
void normalize_channels(Grid3D& image, const float scale[3], const float mean[3],
                        const float stddev[3]);
}  // namespace serial

}  // namespace centerface::kernels
