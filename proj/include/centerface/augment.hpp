#pragma once

#include <cstdint>
#include <utility>

#include "centerface/annotations.hpp"

namespace centerface {

struct AugmentConfig {
    int crop_size = 800;
    float min_face = 8.0f;  // faces smaller than this (min side, post-transform) are dropped
    float flip_prob = 0.5f;
    std::pair<float, float> scale_range{0.5f, 2.0f};
    // Jitter amplitudes; each factor is drawn from [-amp, amp].
    float brightness = 0.2f;  // additive, as a fraction of 255
    float contrast = 0.2f;    // gain around the mean intensity
    float saturation = 0.2f;  // blend toward per-pixel gray
};

// Deterministic uniform source (splitmix64 under the hood) so augmented
// batches replay bit-identically across platforms and compilers.
class AugmentRng {
public:
    explicit AugmentRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    float uniform();  // [0, 1)
    float uniform(float lo, float hi);
    int uniform_int(int lo, int hi);  // inclusive on both ends

private:
    std::uint64_t state_;
};

// Geometry actually applied, for re-projecting annotations externally:
// x' = x * scale + offset_x, then mirrored at crop_size when flipped.
struct AppliedAugment {
    float scale = 1.0f;
    float offset_x = 0.0f;
    float offset_y = 0.0f;
    bool flipped = false;
};

// Random rescale, square crop of cfg.crop_size (zero-padded past borders),
// coin-flip mirror, then color jitter. Annotations go through the same
// geometry; pixels only through the jitter. Faces whose center leaves the
// crop are dropped, survivors are clamped to the crop, and anything whose
// clamped min side falls under cfg.min_face is dropped too. An empty face
// list out is a valid result.
Sample augment(const Sample& in, const AugmentConfig& cfg, AugmentRng& rng,
               AppliedAugment* applied = nullptr);

}  // namespace centerface
