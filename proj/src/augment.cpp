#include "centerface/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "centerface/kernels.hpp"

namespace centerface {

std::uint64_t AugmentRng::next_u64() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

float AugmentRng::uniform() {
    // 24 bits so the float mantissa holds the value exactly on every platform
    return static_cast<float>(next_u64() >> 40) * (1.0f / 16777216.0f);
}

float AugmentRng::uniform(float lo, float hi) { return lo + (hi - lo) * uniform(); }

int AugmentRng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

Point2f apply_affine(Point2f p, float s, float ox, float oy) {
    return {p.x * s + ox, p.y * s + oy};
}

void jitter_colors(Grid3D& img, float brightness_u, float contrast_u, float saturation_u) {
    const float add = brightness_u * 255.0f;
    for (float& v : img.data) v += add;

    double sum = 0.0;
    for (float v : img.data) sum += v;
    const float mean = img.data.empty() ? 0.0f : static_cast<float>(sum / img.data.size());
    const float gain = 1.0f + contrast_u;
    for (float& v : img.data) v = mean + (v - mean) * gain;

    const float sat = 1.0f + saturation_u;
    const size_t n = img.plane_size();
    float* r = img.plane(0);
    float* g = img.plane(1);
    float* b = img.plane(2);
    for (size_t i = 0; i < n; ++i) {
        const float gray = 0.299f * r[i] + 0.587f * g[i] + 0.114f * b[i];
        r[i] = gray + (r[i] - gray) * sat;
        g[i] = gray + (g[i] - gray) * sat;
        b[i] = gray + (b[i] - gray) * sat;
    }

    for (float& v : img.data) v = std::clamp(v, 0.0f, 255.0f);
}

}  // namespace

Sample augment(const Sample& in, const AugmentConfig& cfg, AugmentRng& rng,
               AppliedAugment* applied) {
    if (in.image.channels != 3 || in.image.width < 1 || in.image.height < 1)
        throw std::invalid_argument("augment: image must be 3xHxW");
    if (cfg.crop_size < 1) throw std::invalid_argument("augment: crop_size must be positive");

    // Fixed draw order keeps replays stable no matter which options are active.
    const float s = rng.uniform(cfg.scale_range.first, cfg.scale_range.second);
    const int scaled_w = std::max(1, static_cast<int>(std::lround(in.image.width * s)));
    const int scaled_h = std::max(1, static_cast<int>(std::lround(in.image.height * s)));
    const int span_x = scaled_w - cfg.crop_size;
    const int span_y = scaled_h - cfg.crop_size;
    const int x0 = rng.uniform_int(std::min(0, span_x), std::max(0, span_x));
    const int y0 = rng.uniform_int(std::min(0, span_y), std::max(0, span_y));
    const bool flip = rng.uniform() < cfg.flip_prob;
    const float brightness_u = rng.uniform(-cfg.brightness, cfg.brightness);
    const float contrast_u = rng.uniform(-cfg.contrast, cfg.contrast);
    const float saturation_u = rng.uniform(-cfg.saturation, cfg.saturation);

    const float ox = static_cast<float>(-x0);
    const float oy = static_cast<float>(-y0);
    const int crop = cfg.crop_size;

    Sample out;
    out.source_path = in.source_path;
    out.image = kernels::sample_affine(in.image, crop, crop, s, s, ox, oy);
    if (flip)
        out.image = kernels::sample_affine(out.image, crop, crop, -1.0f, 1.0f,
                                           static_cast<float>(crop), 0.0f);

    for (const FaceAnnotation& face : in.faces) {
        FaceAnnotation f = face;
        const Point2f p1 = apply_affine({face.box.x1, face.box.y1}, s, ox, oy);
        const Point2f p2 = apply_affine({face.box.x2, face.box.y2}, s, ox, oy);
        f.box = {p1.x, p1.y, p2.x, p2.y};
        for (int i = 0; i < kLandmarkCount; ++i)
            f.landmarks.points[i] = apply_affine(face.landmarks.points[i], s, ox, oy);
        if (flip) {
            f.box = mirror_box(f.box, static_cast<float>(crop));
            f.landmarks = mirror_landmarks(f.landmarks, static_cast<float>(crop));
        }

        const Point2f c = box_center(f.box);
        if (c.x < 0 || c.x >= crop || c.y < 0 || c.y >= crop) continue;

        f.box.x1 = std::clamp(f.box.x1, 0.0f, static_cast<float>(crop));
        f.box.y1 = std::clamp(f.box.y1, 0.0f, static_cast<float>(crop));
        f.box.x2 = std::clamp(f.box.x2, 0.0f, static_cast<float>(crop));
        f.box.y2 = std::clamp(f.box.y2, 0.0f, static_cast<float>(crop));
        if (f.box.min_side() < cfg.min_face) continue;

        out.faces.push_back(f);
    }

    jitter_colors(out.image, brightness_u, contrast_u, saturation_u);

    if (applied) *applied = {s, ox, oy, flip};
    return out;
}

}  // namespace centerface
