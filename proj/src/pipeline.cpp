#include "centerface/pipeline.hpp"

#include <stdexcept>

#include "centerface/kernels.hpp"

namespace centerface {

Grid3D mirror_image(const Grid3D& image) {
    // scale -1 lands every sample on an exact pixel center, so this is a copy
    return kernels::sample_affine(image, image.height, image.width, -1.0f, 1.0f,
                                  static_cast<float>(image.width), 0.0f);
}

std::vector<Detection> detect_image(Backend& backend, const Grid3D& image,
                                    const BackendSpec& spec, const DetectOptions& opt) {
    if (image.channels != 3 || image.width < 1 || image.height < 1)
        throw std::invalid_argument("detect_image: image must be 3xHxW");

    std::vector<float> scales = opt.post.tta_scales;
    if (scales.empty()) scales.push_back(1.0f);

    std::vector<std::pair<ViewTransform, std::vector<Detection>>> views;
    Grid3D flipped_image;

    const int flip_passes = opt.post.tta_flip ? 2 : 1;
    for (int pass = 0; pass < flip_passes; ++pass) {
        const bool flip = pass == 1;
        if (flip && flipped_image.size() == 0) flipped_image = mirror_image(image);
        const Grid3D& base = flip ? flipped_image : image;

        for (float s : scales) {
            PreprocessResult pre = preprocess(base, opt.target_long_side, spec, s);
            pre.flipped = flip;
            pre.flip_width = static_cast<float>(image.width);

            OutputHeads heads = backend.run(pre);
            validate_heads(heads, pre.input_w, pre.input_h);

            std::vector<Detection> dets =
                decode_detections(heads, pre.input_w, pre.input_h, opt.decode);
            views.emplace_back(
                ViewTransform{pre.scale, pre.pad, flip, static_cast<float>(image.width)},
                std::move(dets));
        }
    }
    return tta_merge(views, opt.post);
}

}  // namespace centerface
