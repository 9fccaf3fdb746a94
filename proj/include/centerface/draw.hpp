#pragma once

#include <array>
#include <vector>

#include "centerface/geometry.hpp"
#include "centerface/grid.hpp"

namespace centerface {

using Rgb = std::array<float, 3>;

// Deterministic software rasterizer so overlay outputs byte-compare across
// platforms. Coordinates are rounded to pixels; everything clips to the image.
void draw_box(Grid3D& image, const Box& b, const Rgb& color, int thickness = 2);
void draw_dot(Grid3D& image, Point2f p, const Rgb& color, int radius = 2);

// Rectangles plus landmark dots for every detection at or above
// score_threshold. Box color keys to the score band: >= 0.75 green,
// >= 0.5 yellow, below that red; landmarks draw in cyan.
void render_overlay(Grid3D& image, const std::vector<Detection>& dets, float score_threshold);

}  // namespace centerface
