#include "centerface/backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "centerface/kernels.hpp"

namespace centerface {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::array<float, 3> parse_triple(const std::string& val, int lineno) {
    std::vector<float> parts;
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            parts.push_back(std::stof(trim(item)));
        } catch (const std::exception&) {
            throw std::runtime_error("spec line " + std::to_string(lineno) + ": bad number '" +
                                     item + "'");
        }
    }
    if (parts.size() == 1) return {parts[0], parts[0], parts[0]};
    if (parts.size() == 3) return {parts[0], parts[1], parts[2]};
    throw std::runtime_error("spec line " + std::to_string(lineno) + ": expected 1 or 3 values");
}

bool parse_bool(const std::string& val, int lineno) {
    if (val == "true" || val == "1") return true;
    if (val == "false" || val == "0") return false;
    throw std::runtime_error("spec line " + std::to_string(lineno) + ": expected true/false");
}

}  // namespace

BackendSpec parse_backend_spec(std::istream& in) {
    BackendSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;

        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("spec line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));

        if (key == "dim_multiple") {
            spec.dim_multiple = std::stoi(val);
            if (spec.dim_multiple < 1)
                throw std::runtime_error("spec line " + std::to_string(lineno) +
                                         ": dim_multiple must be >= 1");
        } else if (key == "norm_scale") {
            spec.norm_scale = parse_triple(val, lineno);
        } else if (key == "norm_mean") {
            spec.norm_mean = parse_triple(val, lineno);
        } else if (key == "norm_std") {
            spec.norm_std = parse_triple(val, lineno);
        } else if (key == "swap_rb") {
            spec.swap_rb = parse_bool(val, lineno);
        } else if (key == "heatmap_is_logits") {
            spec.heatmap_is_logits = parse_bool(val, lineno);
        } else if (key == "head_heatmap") {
            spec.heads.heatmap = val;
        } else if (key == "head_scale") {
            spec.heads.scale = val;
        } else if (key == "head_offset") {
            spec.heads.offset = val;
        } else if (key == "head_landmarks") {
            spec.heads.landmarks = val;
        } else {
            throw std::runtime_error("spec line " + std::to_string(lineno) + ": unknown key '" +
                                     key + "'");
        }
    }
    for (float d : spec.norm_std)
        if (d == 0.0f) throw std::runtime_error("backend spec: norm_std must be nonzero");
    return spec;
}

BackendSpec load_backend_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open backend spec: " + path);
    return parse_backend_spec(in);
}

namespace {
int round_up(int v, int multiple) { return ((v + multiple - 1) / multiple) * multiple; }
}  // namespace

PreprocessResult preprocess(const Grid3D& image, std::optional<int> target_long_side,
                            const BackendSpec& spec, float scale_factor) {
    if (image.channels != 3 || image.width < 1 || image.height < 1)
        throw std::invalid_argument("preprocess: image must be 3xHxW");
    if (!(scale_factor > 0.0f)) throw std::invalid_argument("preprocess: scale_factor must be > 0");
    if (spec.dim_multiple < 1) throw std::invalid_argument("preprocess: dim_multiple must be >= 1");

    double fit = 1.0;
    if (target_long_side) {
        if (*target_long_side < 1)
            throw std::invalid_argument("preprocess: target_long_side must be >= 1");
        const int long_side = std::max(image.width, image.height);
        if (long_side > *target_long_side)  // fit-to-budget only ever shrinks
            fit = static_cast<double>(*target_long_side) / long_side;
    }
    const float s = static_cast<float>(fit * scale_factor);

    const int content_w = std::max(1, static_cast<int>(std::lround(image.width * static_cast<double>(s))));
    const int content_h = std::max(1, static_cast<int>(std::lround(image.height * static_cast<double>(s))));
    const int in_w = round_up(content_w, spec.dim_multiple);
    const int in_h = round_up(content_h, spec.dim_multiple);

    PreprocessResult out;
    // single resample pass; reads past the source come back zero, which IS the
    // bottom/right padding
    out.tensor = kernels::sample_affine(image, in_h, in_w, s, s, 0.0f, 0.0f);
    if (spec.swap_rb) {
        float* r = out.tensor.plane(0);
        float* b = out.tensor.plane(2);
        std::swap_ranges(r, r + out.tensor.plane_size(), b);
    }
    kernels::normalize_channels(out.tensor, spec.norm_scale.data(), spec.norm_mean.data(),
                                spec.norm_std.data());

    out.scale = s;
    out.pad = {0.0f, 0.0f};  // padding sits bottom/right, so coordinates don't shift
    out.input_w = in_w;
    out.input_h = in_h;
    return out;
}

void validate_heads(const OutputHeads& heads, int input_w, int input_h) {
    auto fail = [](const std::string& head, const std::string& what) {
        throw std::runtime_error("head '" + head + "': " + what);
    };
    if (heads.stride < 1 || input_w % heads.stride != 0 || input_h % heads.stride != 0)
        throw std::runtime_error("input dims " + std::to_string(input_w) + "x" +
                                 std::to_string(input_h) + " not divisible by stride " +
                                 std::to_string(heads.stride));
    const int gw = input_w / heads.stride;
    const int gh = input_h / heads.stride;

    auto check_plane = [&](const std::string& name, int ch, int want_ch, int h, int w) {
        if (ch != want_ch)
            fail(name, "expected " + std::to_string(want_ch) + " channels, got " +
                           std::to_string(ch));
        if (h != gh || w != gw)
            fail(name, "expected " + std::to_string(gh) + "x" + std::to_string(gw) + ", got " +
                           std::to_string(h) + "x" + std::to_string(w));
    };
    check_plane("heatmap", 1, 1, heads.heatmap.height, heads.heatmap.width);
    check_plane("scale", heads.size.channels, 2, heads.size.height, heads.size.width);
    check_plane("offset", heads.offset.channels, 2, heads.offset.height, heads.offset.width);
    check_plane("landmarks", heads.landmarks.channels, 2 * kLandmarkCount, heads.landmarks.height,
                heads.landmarks.width);
}

OutputHeads heads_from_targets(const TargetMaps& maps) {
    OutputHeads heads;
    heads.heatmap = maps.heatmap;
    heads.size = maps.size;
    heads.offset = maps.offset;
    heads.landmarks = maps.landmarks;
    heads.stride = kStride;
    return heads;
}

namespace {

class SyntheticBackend final : public Backend {
public:
    SyntheticBackend(std::vector<FaceAnnotation> plants, int image_w, int image_h)
        : plants_(std::move(plants)), image_w_(image_w), image_h_(image_h) {
        if (image_w_ < 1 || image_h_ < 1)
            throw std::invalid_argument("synthetic_backend: bad image dims");
    }

    OutputHeads run(const PreprocessResult& input) override {
        std::vector<FaceAnnotation> projected;
        projected.reserve(plants_.size());
        for (const FaceAnnotation& plant : plants_) {
            FaceAnnotation f = plant;
            if (input.flipped) {
                const float fw = input.flip_width > 0.0f ? input.flip_width
                                                         : static_cast<float>(image_w_);
                f.box = mirror_box(f.box, fw);
                f.landmarks = mirror_landmarks(f.landmarks, fw);
            }
            const float s = input.scale;
            f.box = {f.box.x1 * s + input.pad.x, f.box.y1 * s + input.pad.y,
                     f.box.x2 * s + input.pad.x, f.box.y2 * s + input.pad.y};
            for (Point2f& p : f.landmarks.points) p = {p.x * s + input.pad.x, p.y * s + input.pad.y};
            projected.push_back(f);
        }
        return heads_from_targets(encode_targets(projected, input.input_w, input.input_h));
    }

    std::unique_ptr<Backend> clone() const override {
        return std::make_unique<SyntheticBackend>(plants_, image_w_, image_h_);
    }

private:
    std::vector<FaceAnnotation> plants_;  // original-image coordinates
    int image_w_;
    int image_h_;
};

}  // namespace

std::unique_ptr<Backend> synthetic_backend(std::vector<FaceAnnotation> plants, int image_w,
                                           int image_h) {
    return std::make_unique<SyntheticBackend>(std::move(plants), image_w, image_h);
}

}  // namespace centerface
