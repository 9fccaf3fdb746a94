#include "centerface/target_codec.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace centerface {

namespace {

// Smallest admissible root of a r^2 - b r + c = 0 (a > 0, b > 0, c >= 0);
// for the grow regime c flips sign and the positive root is wanted, which is
// the same expression with the discriminant dominating b.
double quad_root_min(double a, double b, double c) {
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    return (b - std::sqrt(disc)) / (2.0 * a);
}

double quad_root_pos(double a, double b, double c) {
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    return (-b + std::sqrt(disc)) / (2.0 * a);
}

}  // namespace

float gaussian_radius(float box_w, float box_h, float min_overlap) {
    if (!(box_w > 0.0f) || !(box_h > 0.0f))
        throw std::invalid_argument("gaussian_radius: box dims must be positive");
    if (!(min_overlap >= 0.0f && min_overlap <= 1.0f))
        throw std::invalid_argument("gaussian_radius: min_overlap must be in [0,1]");

    const double w = box_w, h = box_h, o = min_overlap;

    // both corners pushed diagonally outward/inward by r
    const double r1 = quad_root_min(1.0, w + h, w * h * (1.0 - o) / (1.0 + o));
    // every side pulled inward by r
    const double r2 = quad_root_min(4.0, 2.0 * (w + h), (1.0 - o) * w * h);
    // every side pushed outward by r
    const double r3 = o > 0.0 ? quad_root_pos(4.0 * o, 2.0 * o * (w + h), (o - 1.0) * w * h)
                              : std::min(w, h);  // overlap 0 puts no bound on growth

    const double r = std::min(r1, std::min(r2, r3));
    return static_cast<float>(std::max(0.0, r));
}

void splat_gaussian(Grid2D& heatmap, int cx, int cy, float radius) {
    if (!heatmap.contains(cy, cx))
        throw std::invalid_argument("splat_gaussian: center outside the map");
    if (!(radius >= 0.0f)) throw std::invalid_argument("splat_gaussian: negative radius");

    const int r = static_cast<int>(std::ceil(radius));
    if (r == 0) {
        // degenerate kernel: just the point mass
        float& cell = heatmap.at(cy, cx);
        cell = std::max(cell, 1.0f);
        return;
    }

    const double sigma = radius / 3.0;
    const double denom = 2.0 * sigma * sigma;
    for (int dy = -r; dy <= r; ++dy) {
        const int y = cy + dy;
        if (y < 0 || y >= heatmap.height) continue;
        for (int dx = -r; dx <= r; ++dx) {
            const int x = cx + dx;
            if (x < 0 || x >= heatmap.width) continue;
            const double v = std::exp(-(dx * dx + dy * dy) / denom);
            float& cell = heatmap.at(y, x);
            cell = std::max(cell, static_cast<float>(v));
        }
    }
}

TargetMaps encode_targets(const std::vector<FaceAnnotation>& faces, int image_w, int image_h) {
    if (image_w <= 0 || image_h <= 0 || image_w % kStride != 0 || image_h % kStride != 0)
        throw std::invalid_argument("encode_targets: image dims must be positive multiples of 4");

    const int gw = image_w / kStride;
    const int gh = image_h / kStride;

    TargetMaps maps;
    maps.heatmap = Grid2D(gh, gw);
    maps.offset = Grid3D(2, gh, gw);
    maps.size = Grid3D(2, gh, gw);
    maps.landmarks = Grid3D(2 * kLandmarkCount, gh, gw);

    std::vector<int> owner(static_cast<size_t>(gh) * gw, -1);  // cell -> positives index

    for (size_t i = 0; i < faces.size(); ++i) {
        const FaceAnnotation& face = faces[i];
        const double w = face.box.width();
        const double h = face.box.height();
        if (std::min(w, h) < kMinFacePx) continue;

        const Point2f c = box_center(face.box);
        const double fx = c.x / kStride;
        const double fy = c.y / kStride;
        const int gx = static_cast<int>(std::floor(fx));
        const int gy = static_cast<int>(std::floor(fy));
        if (gx < 0 || gx >= gw || gy < 0 || gy >= gh) continue;

        const float radius =
            gaussian_radius(static_cast<float>(w / kStride), static_cast<float>(h / kStride));
        splat_gaussian(maps.heatmap, gx, gy, radius);

        maps.offset.at(0, gy, gx) = static_cast<float>(fx - gx);
        maps.offset.at(1, gy, gx) = static_cast<float>(fy - gy);
        maps.size.at(0, gy, gx) = static_cast<float>(std::log(w / kStride));
        maps.size.at(1, gy, gx) = static_cast<float>(std::log(h / kStride));

        const bool mask = face.landmark_valid && face.landmarks.all_valid();
        for (int k = 0; k < kLandmarkCount; ++k) {
            // later faces overwrite the whole cell, so always write all planes
            const Point2f p = face.landmarks.points[k];
            maps.landmarks.at(2 * k, gy, gx) = mask ? static_cast<float>((p.x - c.x) / w) : 0.0f;
            maps.landmarks.at(2 * k + 1, gy, gx) = mask ? static_cast<float>((p.y - c.y) / h) : 0.0f;
        }

        const PositiveCell pos{static_cast<int>(i), gx, gy, mask};
        int& slot = owner[static_cast<size_t>(gy) * gw + gx];
        if (slot >= 0) {
            maps.positives[slot] = pos;
        } else {
            slot = static_cast<int>(maps.positives.size());
            maps.positives.push_back(pos);
        }
    }
    return maps;
}

CellTargets cell_targets(const TargetMaps& maps, int gx, int gy) {
    CellTargets t;
    t.offset_x = maps.offset.at(0, gy, gx);
    t.offset_y = maps.offset.at(1, gy, gx);
    t.log_w = maps.size.at(0, gy, gx);
    t.log_h = maps.size.at(1, gy, gx);
    for (int k = 0; k < 2 * kLandmarkCount; ++k) t.landmarks[k] = maps.landmarks.at(k, gy, gx);
    return t;
}

DecodedFace decode_single(const CellTargets& t, int gx, int gy, int stride) {
    const double cx = (gx + static_cast<double>(t.offset_x)) * stride;
    const double cy = (gy + static_cast<double>(t.offset_y)) * stride;
    const double w = std::exp(static_cast<double>(t.log_w)) * stride;
    const double h = std::exp(static_cast<double>(t.log_h)) * stride;

    DecodedFace out;
    out.box = {static_cast<float>(cx - w / 2), static_cast<float>(cy - h / 2),
               static_cast<float>(cx + w / 2), static_cast<float>(cy + h / 2)};
    for (int k = 0; k < kLandmarkCount; ++k) {
        out.landmarks.points[k] = {static_cast<float>(cx + t.landmarks[2 * k] * w),
                                   static_cast<float>(cy + t.landmarks[2 * k + 1] * h)};
        out.landmarks.valid[k] = true;
    }
    return out;
}

namespace {

constexpr char kMagic[4] = {'C', 'F', 'T', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void put_f32(std::ostream& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("target map file truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

void put_plane(std::ostream& out, const float* p, size_t n) {
    for (size_t i = 0; i < n; ++i) put_f32(out, p[i]);
}

void get_plane(std::istream& in, float* p, size_t n) {
    for (size_t i = 0; i < n; ++i) p[i] = get_f32(in);
}

}  // namespace

void save_target_maps(const TargetMaps& maps, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);

    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(maps.heatmap.height));
    put_u32(out, static_cast<std::uint32_t>(maps.heatmap.width));

    const size_t n = maps.heatmap.size();
    put_plane(out, maps.heatmap.data.data(), n);
    put_plane(out, maps.offset.data.data(), maps.offset.size());
    put_plane(out, maps.size.data.data(), maps.size.size());
    put_plane(out, maps.landmarks.data.data(), maps.landmarks.size());

    put_u32(out, static_cast<std::uint32_t>(maps.positives.size()));
    for (const PositiveCell& p : maps.positives) {
        put_u32(out, static_cast<std::uint32_t>(p.face_id));
        put_u32(out, static_cast<std::uint32_t>(p.gx));
        put_u32(out, static_cast<std::uint32_t>(p.gy));
        put_u32(out, p.landmark_mask ? 1 : 0);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

TargetMaps load_target_maps(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kMagic, 4))
        throw std::runtime_error("not a target map file: " + path);
    const std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported target map version " + std::to_string(version));

    const std::uint32_t gh = get_u32(in);
    const std::uint32_t gw = get_u32(in);
    if (gh < 1 || gw < 1 || gh > (1u << 20) || gw > (1u << 20))
        throw std::runtime_error("implausible target map dims");

    TargetMaps maps;
    maps.heatmap = Grid2D(static_cast<int>(gh), static_cast<int>(gw));
    maps.offset = Grid3D(2, gh, gw);
    maps.size = Grid3D(2, gh, gw);
    maps.landmarks = Grid3D(2 * kLandmarkCount, gh, gw);

    get_plane(in, maps.heatmap.data.data(), maps.heatmap.size());
    get_plane(in, maps.offset.data.data(), maps.offset.size());
    get_plane(in, maps.size.data.data(), maps.size.size());
    get_plane(in, maps.landmarks.data.data(), maps.landmarks.size());

    const std::uint32_t n_pos = get_u32(in);
    if (n_pos > gh * gw) throw std::runtime_error("implausible positive count");
    maps.positives.resize(n_pos);
    for (std::uint32_t i = 0; i < n_pos; ++i) {
        maps.positives[i].face_id = static_cast<int>(get_u32(in));
        maps.positives[i].gx = static_cast<int>(get_u32(in));
        maps.positives[i].gy = static_cast<int>(get_u32(in));
        maps.positives[i].landmark_mask = get_u32(in) != 0;
    }
    return maps;
}

}  // namespace centerface
