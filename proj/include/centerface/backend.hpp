#pragma once

#include <array>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "centerface/annotations.hpp"
#include "centerface/decoder.hpp"

namespace centerface {

// Output tensor names inside an exchange-format model file. Defaults match
// the published face detector release.
struct HeadNames {
    std::string heatmap = "537";
    std::string scale = "538";
    std::string offset = "539";
    std::string landmarks = "540";
};

struct BackendSpec {
    int dim_multiple = 32;  // network input dims are padded up to this
    std::array<float, 3> norm_scale{1.0f, 1.0f, 1.0f};
    std::array<float, 3> norm_mean{0.0f, 0.0f, 0.0f};
    std::array<float, 3> norm_std{1.0f, 1.0f, 1.0f};
    bool swap_rb = false;            // feed channels BGR instead of RGB
    bool heatmap_is_logits = false;  // adapter applies the sigmoid when set
    HeadNames heads;
};

// key = value lines, '#' comments, commas for the per-channel triples.
// Unknown keys throw std::runtime_error.
BackendSpec parse_backend_spec(std::istream& in);
BackendSpec load_backend_spec(const std::string& path);

struct PreprocessResult {
    Grid3D tensor;  // 3 x input_h x input_w, value-transformed
    float scale = 1.0f;      // original -> network coordinates
    Point2f pad{0.0f, 0.0f};  // coordinate shift; zero because padding is bottom/right
    int input_w = 0;
    int input_h = 0;
    // View bookkeeping filled in by the caller when the original frame was
    // mirrored before preprocessing.
    bool flipped = false;
    float flip_width = 0.0f;
};

// Aspect-preserving resize so the long side fits target_long_side (images
// already small enough are not upscaled), composed with an explicit
// scale_factor for multi-scale views, then zero-pad bottom/right up to the
// next dim_multiple and apply the value transform v' = (v*s - mean) / std.
PreprocessResult preprocess(const Grid3D& image, std::optional<int> target_long_side,
                            const BackendSpec& spec, float scale_factor = 1.0f);

// One in-flight run() per handle; clone() for concurrent use.
class Backend {
public:
    virtual ~Backend() = default;
    virtual OutputHeads run(const PreprocessResult& input) = 0;
    virtual std::unique_ptr<Backend> clone() const = 0;
};

// Throws std::runtime_error naming the offending head when channel counts or
// the stride-4 spatial dims do not match the network input.
void validate_heads(const OutputHeads& heads, int input_w, int input_h);

// Training targets reinterpreted as ideal model outputs.
OutputHeads heads_from_targets(const TargetMaps& maps);

// Hermetic test double. Ignores pixel content entirely: it keeps the planted
// faces in original-image coordinates and projects them through the recorded
// view geometry (flip, scale, pad) of each run() call before encoding.
std::unique_ptr<Backend> synthetic_backend(std::vector<FaceAnnotation> plants, int image_w,
                                           int image_h);

}  // namespace centerface
