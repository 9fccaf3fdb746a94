#pragma once

#include <optional>

#include "centerface/backend.hpp"
#include "centerface/postprocess.hpp"

namespace centerface {

struct DetectOptions {
    DecodeConfig decode;
    PostConfig post;
    std::optional<int> target_long_side;  // nullopt: never downscale
};

// Exact horizontal mirror (no resampling).
Grid3D mirror_image(const Grid3D& image);

// Whole per-image pipeline: fan out the configured views (tta_scales x flip),
// run preprocess -> backend -> decode per view, then merge everything back
// into original-image coordinates.
std::vector<Detection> detect_image(Backend& backend, const Grid3D& image,
                                    const BackendSpec& spec, const DetectOptions& opt);

}  // namespace centerface
