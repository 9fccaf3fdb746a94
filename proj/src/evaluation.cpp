#include "centerface/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace centerface {

namespace {

// Overlap fraction used for ignore regions: how much of the prediction sits
// inside the region, regardless of the region's own size.
float intersection_over_pred(const Box& pred, const Box& region) {
    const float pa = std::max(0.0f, pred.width()) * std::max(0.0f, pred.height());
    if (pa <= 0.0f) return 0.0f;
    const float ix = std::min(pred.x2, region.x2) - std::max(pred.x1, region.x1);
    const float iy = std::min(pred.y2, region.y2) - std::max(pred.y1, region.y1);
    if (ix <= 0.0f || iy <= 0.0f) return 0.0f;
    return ix * iy / pa;
}

}  // namespace

MatchResult match_detections(const std::vector<Detection>& preds, const std::vector<Box>& gts,
                             float iou_thresh, const std::vector<Box>& ignore_regions) {
    if (!(iou_thresh > 0.0f && iou_thresh <= 1.0f))
        throw std::invalid_argument("match_detections: iou_thresh must be in (0,1]");

    std::vector<size_t> order(preds.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return preds[a].score > preds[b].score; });

    MatchResult res;
    res.gt_matched.assign(gts.size(), false);
    res.preds.reserve(preds.size());

    for (size_t idx : order) {
        const Detection& p = preds[idx];

        float best_iou = 0.0f;
        int best_gt = -1;
        for (size_t j = 0; j < gts.size(); ++j) {
            if (res.gt_matched[j]) continue;
            const float v = iou(p.box, gts[j]);
            if (v > best_iou) {  // equal IoU keeps the earlier GT
                best_iou = v;
                best_gt = static_cast<int>(j);
            }
        }

        ScoredLabel entry{p.score, MatchLabel::kFalsePositive};
        if (best_gt >= 0 && best_iou >= iou_thresh) {
            res.gt_matched[best_gt] = true;
            entry.label = MatchLabel::kTruePositive;
            ++res.tp;
        } else {
            bool ignored = false;
            for (const Box& region : ignore_regions) {
                if (intersection_over_pred(p.box, region) >= iou_thresh) {
                    ignored = true;
                    break;
                }
            }
            if (ignored) {
                entry.label = MatchLabel::kIgnored;
            } else {
                ++res.fp;
            }
        }
        res.preds.push_back(entry);
    }
    return res;
}

namespace {

struct CurvePoint {
    float threshold = 0.0f;
    long tp = 0;
    long fp = 0;
};

// Collapse to one point per unique score, cumulative counts, descending.
std::vector<CurvePoint> sweep_points(std::vector<ScoredLabel>& preds) {
    std::erase_if(preds, [](const ScoredLabel& s) { return s.label == MatchLabel::kIgnored; });
    std::stable_sort(preds.begin(), preds.end(),
                     [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });

    std::vector<CurvePoint> points;
    long tp = 0, fp = 0;
    for (size_t i = 0; i < preds.size(); ++i) {
        if (preds[i].label == MatchLabel::kTruePositive)
            ++tp;
        else
            ++fp;
        if (i + 1 == preds.size() || preds[i + 1].score != preds[i].score)
            points.push_back({preds[i].score, tp, fp});
    }
    return points;
}

}  // namespace

PRCurve average_precision(std::vector<ScoredLabel> preds, long total_gt) {
    PRCurve out;
    if (total_gt <= 0) return out;

    const std::vector<CurvePoint> points = sweep_points(preds);
    if (points.empty()) return out;

    const size_t n = points.size();
    out.thresholds.resize(n);
    out.precision.resize(n);
    out.recall.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.thresholds[i] = points[i].threshold;
        out.precision[i] = static_cast<double>(points[i].tp) / (points[i].tp + points[i].fp);
        out.recall[i] = static_cast<double>(points[i].tp) / total_gt;
    }

    // all-point interpolation: precision at recall r is the max precision at
    // any recall >= r, i.e. a suffix max over the sweep
    std::vector<double> pmax(n);
    double run = 0.0;
    for (size_t i = n; i-- > 0;) {
        run = std::max(run, out.precision[i]);
        pmax[i] = run;
    }

    // integrate with integer TP steps and divide once, so a perfect sweep is
    // exactly 1.0
    double weighted = 0.0;
    long prev_tp = 0;
    for (size_t i = 0; i < n; ++i) {
        weighted += static_cast<double>(points[i].tp - prev_tp) * pmax[i];
        prev_tp = points[i].tp;
    }
    out.ap = weighted / static_cast<double>(total_gt);
    return out;
}

ROCCurve roc_curve(std::vector<ScoredLabel> preds, long total_gt) {
    ROCCurve out;
    if (total_gt <= 0) return out;

    const std::vector<CurvePoint> points = sweep_points(preds);
    out.thresholds.reserve(points.size());
    out.cum_fp.reserve(points.size());
    out.tpr.reserve(points.size());
    for (const CurvePoint& p : points) {
        out.thresholds.push_back(p.threshold);
        out.cum_fp.push_back(p.fp);
        out.tpr.push_back(static_cast<double>(p.tp) / total_gt);
    }
    return out;
}

double ROCCurve::tpr_at(long fp_budget) const {
    double best = 0.0;
    for (size_t i = 0; i < cum_fp.size(); ++i) {
        if (cum_fp[i] > fp_budget) break;
        best = tpr[i];  // points are threshold-descending, so TPR only grows
    }
    return best;
}

}  // namespace centerface
