#include "centerface/decoder.hpp"

#include <algorithm>
#include <stdexcept>

#include "centerface/kernels.hpp"

namespace centerface {

std::vector<Peak> extract_peaks(const Grid2D& heatmap, const DecodeConfig& cfg) {
    if (cfg.peak_window < 1 || cfg.peak_window % 2 == 0)
        throw std::invalid_argument("extract_peaks: peak_window must be odd and >= 1");
    if (cfg.top_k < 0) throw std::invalid_argument("extract_peaks: top_k must be >= 0");

    const std::vector<std::uint8_t> mask = kernels::local_max_mask(heatmap, cfg.peak_window);

    std::vector<Peak> peaks;
    for (int y = 0; y < heatmap.height; ++y) {
        const float* row = heatmap.row(y);
        const std::uint8_t* mrow = mask.data() + static_cast<size_t>(y) * heatmap.width;
        for (int x = 0; x < heatmap.width; ++x)
            if (mrow[x] && row[x] >= cfg.score_threshold) peaks.push_back({x, y, row[x]});
    }

    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    if (static_cast<int>(peaks.size()) > cfg.top_k) peaks.resize(cfg.top_k);
    return peaks;
}

std::vector<Detection> decode_detections(const OutputHeads& heads, int input_w, int input_h,
                                         const DecodeConfig& cfg) {
    const Grid2D& hm = heads.heatmap;
    const bool ok = heads.offset.channels == 2 && heads.size.channels == 2 &&
                    heads.landmarks.channels == 2 * kLandmarkCount &&
                    heads.offset.height == hm.height && heads.offset.width == hm.width &&
                    heads.size.height == hm.height && heads.size.width == hm.width &&
                    heads.landmarks.height == hm.height && heads.landmarks.width == hm.width;
    if (!ok) throw std::invalid_argument("decode_detections: inconsistent head shapes");

    const std::vector<Peak> peaks = extract_peaks(hm, cfg);

    std::vector<Detection> dets;
    dets.reserve(peaks.size());
    const float w_max = static_cast<float>(input_w);
    const float h_max = static_cast<float>(input_h);

    for (const Peak& pk : peaks) {
        CellTargets t;
        t.offset_x = heads.offset.at(0, pk.y, pk.x);
        t.offset_y = heads.offset.at(1, pk.y, pk.x);
        t.log_w = heads.size.at(0, pk.y, pk.x);
        t.log_h = heads.size.at(1, pk.y, pk.x);
        for (int k = 0; k < 2 * kLandmarkCount; ++k) t.landmarks[k] = heads.landmarks.at(k, pk.y, pk.x);

        DecodedFace f = decode_single(t, pk.x, pk.y, heads.stride);
        // boxes stay inside the network input; landmarks may legitimately fall outside
        f.box.x1 = std::clamp(f.box.x1, 0.0f, w_max);
        f.box.y1 = std::clamp(f.box.y1, 0.0f, h_max);
        f.box.x2 = std::clamp(f.box.x2, 0.0f, w_max);
        f.box.y2 = std::clamp(f.box.y2, 0.0f, h_max);

        dets.push_back({f.box, pk.score, f.landmarks});
    }
    return dets;
}

std::vector<Detection> unpad_rescale(std::vector<Detection> dets, float scale, Point2f pad) {
    if (!(scale > 0.0f)) throw std::invalid_argument("unpad_rescale: scale must be positive");
    const float inv = 1.0f / scale;
    for (Detection& d : dets) {
        d.box = {(d.box.x1 - pad.x) * inv, (d.box.y1 - pad.y) * inv, (d.box.x2 - pad.x) * inv,
                 (d.box.y2 - pad.y) * inv};
        for (Point2f& p : d.landmarks.points) p = {(p.x - pad.x) * inv, (p.y - pad.y) * inv};
    }
    return dets;
}

}  // namespace centerface
