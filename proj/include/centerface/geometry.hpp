#pragma once

#include <array>

namespace centerface {

struct Point2f {
    float x = 0.0f;
    float y = 0.0f;
};

// Axis-aligned box, corner convention (x1,y1,x2,y2), origin top-left, y down.
// Coordinates are continuous; width() is x2-x1 with no pixel inclusivity.
struct Box {
    float x1 = 0.0f;
    float y1 = 0.0f;
    float x2 = 0.0f;
    float y2 = 0.0f;

    float width() const { return x2 - x1; }
    float height() const { return y2 - y1; }
    float area() const { return width() * height(); }
    float min_side() const { return width() < height() ? width() : height(); }
};

// Intersection-over-union on continuous geometry. Zero-area boxes yield 0,
// including against themselves.
float iou(const Box& a, const Box& b);

Point2f box_center(const Box& b);

inline constexpr int kLandmarkCount = 5;

// Fixed landmark order: left eye, right eye, nose tip, left mouth corner,
// right mouth corner. Invalid points carry no coordinate meaning.
struct LandmarkSet {
    std::array<Point2f, kLandmarkCount> points{};
    std::array<bool, kLandmarkCount> valid{};

    bool all_valid() const;
    bool any_valid() const;
};

LandmarkSet all_valid_landmarks(const std::array<Point2f, kLandmarkCount>& pts);

struct Detection {
    Box box;
    float score = 0.0f;
    LandmarkSet landmarks;
};

// Horizontal mirror about the vertical line x = width/2 of an image `width`
// pixels wide: x -> width - x. Left/right landmark indices swap (0<->1, 3<->4),
// the nose (2) stays put.
Box mirror_box(const Box& b, float width);
LandmarkSet mirror_landmarks(const LandmarkSet& lm, float width);
Detection mirror_detection(const Detection& d, float width);

}  // namespace centerface
