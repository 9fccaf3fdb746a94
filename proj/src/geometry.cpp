#include "centerface/geometry.hpp"

#include <algorithm>

namespace centerface {

float iou(const Box& a, const Box& b) {
    const float ax = std::max(0.0f, a.width());
    const float ay = std::max(0.0f, a.height());
    const float bx = std::max(0.0f, b.width());
    const float by = std::max(0.0f, b.height());
    const float area_a = ax * ay;
    const float area_b = bx * by;
    if (area_a <= 0.0f || area_b <= 0.0f) return 0.0f;

    const float ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const float iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (ix <= 0.0f || iy <= 0.0f) return 0.0f;

    const float inter = ix * iy;
    return inter / (area_a + area_b - inter);
}

Point2f box_center(const Box& b) {
    return {(b.x1 + b.x2) * 0.5f, (b.y1 + b.y2) * 0.5f};
}

bool LandmarkSet::all_valid() const {
    for (bool v : valid)
        if (!v) return false;
    return true;
}

bool LandmarkSet::any_valid() const {
    for (bool v : valid)
        if (v) return true;
    return false;
}

LandmarkSet all_valid_landmarks(const std::array<Point2f, kLandmarkCount>& pts) {
    LandmarkSet lm;
    lm.points = pts;
    lm.valid.fill(true);
    return lm;
}

Box mirror_box(const Box& b, float width) {
    return {width - b.x2, b.y1, width - b.x1, b.y2};
}

LandmarkSet mirror_landmarks(const LandmarkSet& lm, float width) {
    // left eye <-> right eye, nose stays, left mouth <-> right mouth
    static constexpr int kSwap[kLandmarkCount] = {1, 0, 2, 4, 3};
    LandmarkSet out;
    for (int i = 0; i < kLandmarkCount; ++i) {
        const int j = kSwap[i];
        out.points[i] = {width - lm.points[j].x, lm.points[j].y};
        out.valid[i] = lm.valid[j];
    }
    return out;
}

Detection mirror_detection(const Detection& d, float width) {
    return {mirror_box(d.box, width), d.score, mirror_landmarks(d.landmarks, width)};
}

}  // namespace centerface
