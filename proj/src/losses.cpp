#include "centerface/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "centerface/kernels.hpp"

namespace centerface {

FocalResult focal_center_loss(const Grid2D& pred, const Grid2D& target, const LossConfig& cfg) {
    FocalResult res;
    res.grad = Grid2D(pred.height, pred.width);
    const kernels::FocalSums sums =
        kernels::focal_plane(pred, target, cfg.alpha, cfg.beta, &res.grad);
    const double norm = static_cast<double>(std::max<long>(1, sums.positives));
    res.loss = sums.loss / norm;
    for (float& g : res.grad.data) g = static_cast<float>(g / norm);
    return res;
}

SmoothL1 smooth_l1(double pred, double target, double delta) {
    if (delta < 0.0) throw std::invalid_argument("smooth_l1: delta must be >= 0");
    const double d = pred - target;
    if (delta == 0.0)  // plain L1
        return {std::abs(d), d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0)};
    if (std::abs(d) < delta) return {0.5 * d * d / delta, d / delta};
    return {std::abs(d) - 0.5 * delta, d > 0.0 ? 1.0 : -1.0};
}

namespace {

void require_same_heads(const OutputHeads& heads, const TargetMaps& targets) {
    const Grid2D& hm = targets.heatmap;
    const bool ok = heads.heatmap.same_shape(hm) && heads.offset.channels == 2 &&
                    heads.size.channels == 2 && heads.landmarks.channels == 2 * kLandmarkCount &&
                    heads.offset.height == hm.height && heads.offset.width == hm.width &&
                    heads.size.height == hm.height && heads.size.width == hm.width &&
                    heads.landmarks.height == hm.height && heads.landmarks.width == hm.width;
    if (!ok) throw std::invalid_argument("total_loss: head shapes do not match the targets");
}

}  // namespace

LossReport total_loss(const OutputHeads& heads, const TargetMaps& targets, const LossConfig& cfg) {
    require_same_heads(heads, targets);

    LossReport rep;
    FocalResult fc = focal_center_loss(heads.heatmap, targets.heatmap, cfg);
    rep.l_center = fc.loss;
    rep.grad_heatmap = std::move(fc.grad);

    const int gh = targets.heatmap.height;
    const int gw = targets.heatmap.width;
    rep.grad_offset = Grid3D(2, gh, gw);
    rep.grad_size = Grid3D(2, gh, gw);
    rep.grad_landmarks = Grid3D(2 * kLandmarkCount, gh, gw);

    const long n_pos = static_cast<long>(targets.positives.size());
    long n_masked = 0;
    for (const PositiveCell& p : targets.positives)
        if (p.landmark_mask) ++n_masked;

    const double off_norm = static_cast<double>(std::max<long>(1, n_pos));
    const double box_norm = static_cast<double>(std::max<long>(1, 2 * n_pos));
    const double lm_norm = static_cast<double>(std::max<long>(1, 2 * kLandmarkCount * n_masked));
    const double delta = cfg.smooth_l1_delta;

    double off_sum = 0.0, box_sum = 0.0, lm_sum = 0.0;
    for (const PositiveCell& p : targets.positives) {
        for (int ch = 0; ch < 2; ++ch) {
            const SmoothL1 so =
                smooth_l1(heads.offset.at(ch, p.gy, p.gx), targets.offset.at(ch, p.gy, p.gx), delta);
            off_sum += so.loss;
            rep.grad_offset.at(ch, p.gy, p.gx) =
                static_cast<float>(cfg.lambda_off * so.grad / off_norm);

            const SmoothL1 sb =
                smooth_l1(heads.size.at(ch, p.gy, p.gx), targets.size.at(ch, p.gy, p.gx), delta);
            box_sum += sb.loss;
            rep.grad_size.at(ch, p.gy, p.gx) =
                static_cast<float>(cfg.lambda_box * sb.grad / box_norm);
        }
        if (p.landmark_mask) {
            for (int ch = 0; ch < 2 * kLandmarkCount; ++ch) {
                const SmoothL1 sl = smooth_l1(heads.landmarks.at(ch, p.gy, p.gx),
                                              targets.landmarks.at(ch, p.gy, p.gx), delta);
                lm_sum += sl.loss;
                rep.grad_landmarks.at(ch, p.gy, p.gx) =
                    static_cast<float>(cfg.lambda_lm * sl.grad / lm_norm);
            }
        }
    }

    rep.l_off = off_sum / off_norm;
    rep.l_box = box_sum / box_norm;
    rep.l_lm = lm_sum / lm_norm;
    rep.total = rep.l_center + cfg.lambda_off * rep.l_off + cfg.lambda_box * rep.l_box +
                cfg.lambda_lm * rep.l_lm;
    return rep;
}

}  // namespace centerface
