#pragma once

// Independent reference implementations used only by tests. Each one is
// deliberately written from the definitions, not by calling library code, so
// agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "centerface/decoder.hpp"
#include "centerface/evaluation.hpp"
#include "centerface/geometry.hpp"
#include "centerface/losses.hpp"

namespace oracle {

using centerface::Box;
using centerface::Detection;

// IoU by counting unit cells; exact for integer-coordinate boxes.
inline double iou_pixel_count(int ax1, int ay1, int ax2, int ay2, int bx1, int by1, int bx2,
                              int by2) {
    long inter = 0, a_only = 0, b_only = 0;
    const int x_lo = std::min(ax1, bx1), x_hi = std::max(ax2, bx2);
    const int y_lo = std::min(ay1, by1), y_hi = std::max(ay2, by2);
    for (int y = y_lo; y < y_hi; ++y)
        for (int x = x_lo; x < x_hi; ++x) {
            const bool in_a = x >= ax1 && x < ax2 && y >= ay1 && y < ay2;
            const bool in_b = x >= bx1 && x < bx2 && y >= by1 && y < by2;
            if (in_a && in_b) ++inter;
            else if (in_a) ++a_only;
            else if (in_b) ++b_only;
        }
    const long uni = inter + a_only + b_only;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

// ---- gaussian radius ------------------------------------------------------
// IoU as an exact function of the displacement r in each regime, bisected
// against the requested overlap. All three curves decrease in r.

inline double iou_translate(double w, double h, double r) {
    // both boxes shifted apart diagonally by r: overlap (w-r)(h-r)
    if (r >= w || r >= h) return 0.0;
    const double inter = (w - r) * (h - r);
    return inter / (2.0 * w * h - inter);
}

inline double iou_shrink(double w, double h, double r) {
    if (2.0 * r >= w || 2.0 * r >= h) return 0.0;
    return (w - 2.0 * r) * (h - 2.0 * r) / (w * h);
}

inline double iou_grow(double w, double h, double r) {
    return w * h / ((w + 2.0 * r) * (h + 2.0 * r));
}

template <typename F>
double bisect_radius(double overlap, double lo, double hi, F&& f) {
    // find r with f(r) == overlap; f decreasing
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= overlap)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double gaussian_radius_bisect(double w, double h, double overlap) {
    if (overlap >= 1.0) return 0.0;
    const double r1 = bisect_radius(overlap, 0.0, std::min(w, h),
                                    [&](double r) { return iou_translate(w, h, r); });
    const double r2 = bisect_radius(overlap, 0.0, std::min(w, h) / 2.0,
                                    [&](double r) { return iou_shrink(w, h, r); });
    const double r3 = bisect_radius(overlap, 0.0, 4.0 * (w + h) / std::max(1e-12, overlap),
                                    [&](double r) { return iou_grow(w, h, r); });
    return std::max(0.0, std::min({r1, r2, r3}));
}

// ---- peak extraction ------------------------------------------------------

inline std::vector<centerface::Peak> peaks_brute_force(const centerface::Grid2D& hm,
                                                       float threshold, int window, int top_k) {
    const int k = window / 2;
    std::vector<centerface::Peak> out;
    for (int y = 0; y < hm.height; ++y)
        for (int x = 0; x < hm.width; ++x) {
            const float v = hm.at(y, x);
            if (v < threshold) continue;
            bool is_max = true;
            for (int dy = -k; dy <= k && is_max; ++dy)
                for (int dx = -k; dx <= k; ++dx) {
                    const int yy = y + dy, xx = x + dx;
                    if (yy < 0 || yy >= hm.height || xx < 0 || xx >= hm.width) continue;
                    if (hm.at(yy, xx) > v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max) out.push_back({x, y, v});
        }
    std::sort(out.begin(), out.end(), [](const centerface::Peak& a, const centerface::Peak& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    if (static_cast<int>(out.size()) > top_k) out.resize(top_k);
    return out;
}

// ---- NMS ------------------------------------------------------------------

inline float iou_ref(const Box& a, const Box& b) {
    const float aw = std::max(0.0f, a.x2 - a.x1), ah = std::max(0.0f, a.y2 - a.y1);
    const float bw = std::max(0.0f, b.x2 - b.x1), bh = std::max(0.0f, b.y2 - b.y1);
    if (aw * ah <= 0 || bw * bh <= 0) return 0.0f;
    const float iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const float ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (iw <= 0 || ih <= 0) return 0.0f;
    return iw * ih / (aw * ah + bw * bh - iw * ih);
}

// Greedy suppression done the quadratic way: repeatedly pick the best live
// candidate instead of sorting first.
inline std::vector<Detection> nms_reference(std::vector<Detection> dets, float thresh) {
    std::vector<bool> dead(dets.size(), false);
    std::vector<Detection> kept;
    while (true) {
        int best = -1;
        for (size_t i = 0; i < dets.size(); ++i) {
            if (dead[i]) continue;
            if (best < 0) {
                best = static_cast<int>(i);
                continue;
            }
            const Detection& a = dets[i];
            const Detection& b = dets[best];
            const bool better = a.score > b.score ||
                                (a.score == b.score &&
                                 (a.box.y1 < b.box.y1 ||
                                  (a.box.y1 == b.box.y1 && a.box.x1 < b.box.x1)));
            if (better) best = static_cast<int>(i);
        }
        if (best < 0) break;
        dead[best] = true;
        kept.push_back(dets[best]);
        for (size_t i = 0; i < dets.size(); ++i)
            if (!dead[i] && iou_ref(dets[i].box, dets[best].box) > thresh) dead[i] = true;
    }
    return kept;
}

// ---- evaluation matching ---------------------------------------------------

struct MatchOracle {
    std::vector<centerface::ScoredLabel> preds;
    int tp = 0;
    int fp = 0;
};

inline MatchOracle match_reference(const std::vector<Detection>& preds,
                                   const std::vector<Box>& gts, float thresh,
                                   const std::vector<Box>& ignores = {}) {
    std::vector<int> order(preds.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return preds[a].score > preds[b].score; });

    std::vector<bool> taken(gts.size(), false);
    MatchOracle out;
    for (int idx : order) {
        float best = 0.0f;
        int who = -1;
        for (size_t j = 0; j < gts.size(); ++j) {
            if (taken[j]) continue;
            const float v = iou_ref(preds[idx].box, gts[j]);
            if (v > best) {
                best = v;
                who = static_cast<int>(j);
            }
        }
        centerface::ScoredLabel lbl{preds[idx].score, centerface::MatchLabel::kFalsePositive};
        if (who >= 0 && best >= thresh) {
            taken[who] = true;
            lbl.label = centerface::MatchLabel::kTruePositive;
            ++out.tp;
        } else {
            bool ign = false;
            for (const Box& region : ignores) {
                const float pw = std::max(0.0f, preds[idx].box.x2 - preds[idx].box.x1);
                const float ph = std::max(0.0f, preds[idx].box.y2 - preds[idx].box.y1);
                if (pw * ph <= 0) continue;
                const float iw = std::min(preds[idx].box.x2, region.x2) -
                                 std::max(preds[idx].box.x1, region.x1);
                const float ih = std::min(preds[idx].box.y2, region.y2) -
                                 std::max(preds[idx].box.y1, region.y1);
                if (iw > 0 && ih > 0 && iw * ih / (pw * ph) >= thresh) {
                    ign = true;
                    break;
                }
            }
            if (ign)
                lbl.label = centerface::MatchLabel::kIgnored;
            else
                ++out.fp;
        }
        out.preds.push_back(lbl);
    }
    return out;
}

// ---- total loss -------------------------------------------------------------
// Scalar re-derivation straight from the formulas.

struct LossOracle {
    double total = 0, l_center = 0, l_off = 0, l_box = 0, l_lm = 0;
};

inline double huber_ref(double d, double delta) {
    if (delta == 0.0) return std::abs(d);
    return std::abs(d) < delta ? 0.5 * d * d / delta : std::abs(d) - 0.5 * delta;
}

inline LossOracle total_loss_reference(const centerface::OutputHeads& heads,
                                       const centerface::TargetMaps& t,
                                       const centerface::LossConfig& cfg) {
    LossOracle out;

    long npos = 0;
    double lc = 0.0;
    for (int y = 0; y < t.heatmap.height; ++y)
        for (int x = 0; x < t.heatmap.width; ++x) {
            const double p =
                std::clamp(static_cast<double>(heads.heatmap.at(y, x)), 1e-6, 1.0 - 1e-6);
            const double yv = t.heatmap.at(y, x);
            if (yv == 1.0) {
                ++npos;
                lc -= std::pow(1.0 - p, cfg.alpha) * std::log(p);
            } else {
                lc -= std::pow(1.0 - yv, cfg.beta) * std::pow(p, cfg.alpha) * std::log(1.0 - p);
            }
        }
    out.l_center = lc / std::max<long>(1, npos);

    const long n = static_cast<long>(t.positives.size());
    long n_masked = 0;
    double off = 0, box = 0, lm = 0;
    for (const centerface::PositiveCell& p : t.positives) {
        for (int ch = 0; ch < 2; ++ch) {
            off += huber_ref(heads.offset.at(ch, p.gy, p.gx) - t.offset.at(ch, p.gy, p.gx),
                             cfg.smooth_l1_delta);
            box += huber_ref(heads.size.at(ch, p.gy, p.gx) - t.size.at(ch, p.gy, p.gx),
                             cfg.smooth_l1_delta);
        }
        if (p.landmark_mask) {
            ++n_masked;
            for (int ch = 0; ch < 10; ++ch)
                lm += huber_ref(heads.landmarks.at(ch, p.gy, p.gx) - t.landmarks.at(ch, p.gy, p.gx),
                                cfg.smooth_l1_delta);
        }
    }
    out.l_off = off / std::max<long>(1, n);
    out.l_box = box / std::max<long>(1, 2 * n);
    out.l_lm = lm / std::max<long>(1, 10 * n_masked);
    out.total = out.l_center + cfg.lambda_off * out.l_off + cfg.lambda_box * out.l_box +
                cfg.lambda_lm * out.l_lm;
    return out;
}

}  // namespace oracle
