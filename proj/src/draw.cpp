#include "centerface/draw.hpp"

#include <algorithm>
#include <cmath>

namespace centerface {

namespace {

void set_px(Grid3D& img, int x, int y, const Rgb& c) {
    if (x < 0 || x >= img.width || y < 0 || y >= img.height) return;
    for (int ch = 0; ch < 3 && ch < img.channels; ++ch) img.at(ch, y, x) = c[ch];
}

void fill_rect(Grid3D& img, int x1, int y1, int x2, int y2, const Rgb& c) {
    for (int y = y1; y <= y2; ++y)
        for (int x = x1; x <= x2; ++x) set_px(img, x, y, c);
}

}  // namespace

void draw_box(Grid3D& image, const Box& b, const Rgb& color, int thickness) {
    const int x1 = static_cast<int>(std::lround(b.x1));
    const int y1 = static_cast<int>(std::lround(b.y1));
    const int x2 = static_cast<int>(std::lround(b.x2));
    const int y2 = static_cast<int>(std::lround(b.y2));
    if (x2 < x1 || y2 < y1 || thickness < 1) return;
    const int t = thickness;

    fill_rect(image, x1, y1, x2, std::min(y1 + t - 1, y2), color);          // top
    fill_rect(image, x1, std::max(y2 - t + 1, y1), x2, y2, color);          // bottom
    fill_rect(image, x1, y1, std::min(x1 + t - 1, x2), y2, color);          // left
    fill_rect(image, std::max(x2 - t + 1, x1), y1, x2, y2, color);          // right
}

void draw_dot(Grid3D& image, Point2f p, const Rgb& color, int radius) {
    const int cx = static_cast<int>(std::lround(p.x));
    const int cy = static_cast<int>(std::lround(p.y));
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= r2) set_px(image, cx + dx, cy + dy, color);
}

void render_overlay(Grid3D& image, const std::vector<Detection>& dets, float score_threshold) {
    constexpr Rgb kGreen{0, 255, 0};
    constexpr Rgb kYellow{255, 255, 0};
    constexpr Rgb kRed{255, 0, 0};
    constexpr Rgb kCyan{0, 255, 255};

    for (const Detection& d : dets) {
        if (d.score < score_threshold) continue;
        const Rgb& band = d.score >= 0.75f ? kGreen : (d.score >= 0.5f ? kYellow : kRed);
        draw_box(image, d.box, band, 2);
        for (int i = 0; i < kLandmarkCount; ++i)
            if (d.landmarks.valid[i]) draw_dot(image, d.landmarks.points[i], kCyan, 2);
    }
}

}  // namespace centerface
