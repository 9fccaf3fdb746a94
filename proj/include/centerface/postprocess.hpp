#pragma once

#include <utility>
#include <vector>

#include "centerface/geometry.hpp"

namespace centerface {

struct PostConfig {
    float nms_iou = 0.3f;
    float vote_iou = 0.4f;
    std::vector<float> tta_scales{1.0f};
    bool tta_flip = false;
};

// Greedy suppression: walk candidates by score descending (ties: smaller y1,
// then smaller x1) and drop anything with IoU strictly above iou_thresh
// against an already-kept box. Output keeps that order.
std::vector<Detection> nms_greedy(std::vector<Detection> dets, float iou_thresh);

// Refine each kept detection by the score-weighted average of every union-set
// member (kept + suppressed) whose IoU against it is >= vote_iou; the voters
// always include the detection itself. Boxes and landmark points average,
// the score becomes the voter maximum. A kept box with zero total weight is
// returned unchanged.
std::vector<Detection> box_vote(const std::vector<Detection>& kept,
                                const std::vector<Detection>& union_set, float vote_iou);

// Geometry of one test-time view in application order: mirror the original
// frame at flip_width, scale, then shift by pad.
struct ViewTransform {
    float scale = 1.0f;
    Point2f pad{0.0f, 0.0f};
    bool flipped = false;
    float flip_width = 0.0f;  // original image width
};

// Invert a view's geometry on its detections (boxes and landmarks, with the
// landmark left/right swap on flipped views).
std::vector<Detection> map_to_original(const std::vector<Detection>& dets,
                                       const ViewTransform& view);

// Map every view back to original coordinates, pool, NMS, vote with the full
// pool, and return sorted by final score descending.
std::vector<Detection> tta_merge(
    const std::vector<std::pair<ViewTransform, std::vector<Detection>>>& views,
    const PostConfig& cfg);

}  // namespace centerface
