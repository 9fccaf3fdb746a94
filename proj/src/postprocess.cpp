#include "centerface/postprocess.hpp"

#include <algorithm>
#include <stdexcept>

#include "centerface/decoder.hpp"

namespace centerface {

namespace {

bool det_order(const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
    return a.box.x1 < b.box.x1;
}

void check_unit_range(float v, const char* name) {
    if (!(v >= 0.0f && v <= 1.0f))
        throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

}  // namespace

std::vector<Detection> nms_greedy(std::vector<Detection> dets, float iou_thresh) {
    check_unit_range(iou_thresh, "nms iou");
    std::sort(dets.begin(), dets.end(), det_order);

    std::vector<Detection> kept;
    for (const Detection& d : dets) {
        bool suppressed = false;
        for (const Detection& k : kept) {
            if (iou(d.box, k.box) > iou_thresh) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(d);
    }
    return kept;
}

std::vector<Detection> box_vote(const std::vector<Detection>& kept,
                                const std::vector<Detection>& union_set, float vote_iou) {
    check_unit_range(vote_iou, "vote iou");

    std::vector<Detection> out;
    out.reserve(kept.size());
    for (const Detection& k : kept) {
        double weight = 0.0;
        double box_acc[4] = {0, 0, 0, 0};
        double lm_acc[2 * kLandmarkCount] = {};
        float best = 0.0f;
        bool any = false;

        for (const Detection& v : union_set) {
            if (iou(k.box, v.box) < vote_iou) continue;
            const double w = v.score;
            weight += w;
            box_acc[0] += w * v.box.x1;
            box_acc[1] += w * v.box.y1;
            box_acc[2] += w * v.box.x2;
            box_acc[3] += w * v.box.y2;
            for (int i = 0; i < kLandmarkCount; ++i) {
                lm_acc[2 * i] += w * v.landmarks.points[i].x;
                lm_acc[2 * i + 1] += w * v.landmarks.points[i].y;
            }
            best = any ? std::max(best, v.score) : v.score;
            any = true;
        }

        // zero-area or otherwise voter-less boxes pass through untouched
        if (!any || weight <= 0.0) {
            out.push_back(k);
            continue;
        }

        Detection d = k;
        d.box = {static_cast<float>(box_acc[0] / weight), static_cast<float>(box_acc[1] / weight),
                 static_cast<float>(box_acc[2] / weight), static_cast<float>(box_acc[3] / weight)};
        for (int i = 0; i < kLandmarkCount; ++i)
            d.landmarks.points[i] = {static_cast<float>(lm_acc[2 * i] / weight),
                                     static_cast<float>(lm_acc[2 * i + 1] / weight)};
        d.score = best;
        out.push_back(d);
    }
    return out;
}

std::vector<Detection> map_to_original(const std::vector<Detection>& dets,
                                       const ViewTransform& view) {
    std::vector<Detection> out = unpad_rescale(dets, view.scale, view.pad);
    if (view.flipped)
        for (Detection& d : out) d = mirror_detection(d, view.flip_width);
    return out;
}

std::vector<Detection> tta_merge(
    const std::vector<std::pair<ViewTransform, std::vector<Detection>>>& views,
    const PostConfig& cfg) {
    std::vector<Detection> pool;
    for (const auto& [transform, dets] : views) {
        std::vector<Detection> mapped = map_to_original(dets, transform);
        pool.insert(pool.end(), mapped.begin(), mapped.end());
    }

    const std::vector<Detection> kept = nms_greedy(pool, cfg.nms_iou);
    std::vector<Detection> voted = box_vote(kept, pool, cfg.vote_iou);
    std::sort(voted.begin(), voted.end(), det_order);
    return voted;
}

}  // namespace centerface
