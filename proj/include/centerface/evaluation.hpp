#pragma once

#include <vector>

#include "centerface/geometry.hpp"

namespace centerface {

enum class MatchLabel : unsigned char { kTruePositive, kFalsePositive, kIgnored };

struct ScoredLabel {
    float score = 0.0f;
    MatchLabel label = MatchLabel::kFalsePositive;
};

struct MatchResult {
    std::vector<ScoredLabel> preds;  // score-descending processing order
    std::vector<bool> gt_matched;    // parallel to the input GT list
    int tp = 0;
    int fp = 0;
};

// Greedy matching for one image: walk predictions by score descending (equal
// scores keep input order) and give each the highest-IoU unmatched GT when
// that IoU >= iou_thresh. Unmatched predictions whose overlap with an ignore
// region (intersection over prediction area) reaches iou_thresh are labeled
// ignored and count as neither TP nor FP. Dataset results aggregate by
// concatenating pred lists and summing GT counts.
MatchResult match_detections(const std::vector<Detection>& preds, const std::vector<Box>& gts,
                             float iou_thresh = 0.5f, const std::vector<Box>& ignore_regions = {});

struct PRCurve {
    std::vector<float> thresholds;  // unique scores, descending
    std::vector<double> precision;
    std::vector<double> recall;
    double ap = 0.0;
};

// All-point interpolated average precision over pooled predictions. Ignored
// entries contribute nothing; total_gt <= 0 yields an empty curve with ap 0.
PRCurve average_precision(std::vector<ScoredLabel> preds, long total_gt);

struct ROCCurve {
    std::vector<float> thresholds;
    std::vector<long> cum_fp;
    std::vector<double> tpr;

    // TPR at the last point whose cumulative FP count is within the budget.
    double tpr_at(long fp_budget) const;
};

ROCCurve roc_curve(std::vector<ScoredLabel> preds, long total_gt);

}  // namespace centerface
