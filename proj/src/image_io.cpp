#include "centerface/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace centerface {

namespace {

// PPM allows comments and arbitrary whitespace between header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    while (in) {
        const int c = in.peek();
        if (c == '#') {
            std::string comment;
            std::getline(in, comment);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = 0;
    if (!(in >> v)) throw std::runtime_error("bad ppm header: " + path);
    return v;
}

}  // namespace

Grid3D load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);

    std::string magic;
    in >> magic;
    if (magic != "P6") throw std::runtime_error("not a binary ppm (P6): " + path);

    const int w = next_header_int(in, path);
    const int h = next_header_int(in, path);
    const int maxval = next_header_int(in, path);
    if (w < 1 || h < 1 || maxval != 255)
        throw std::runtime_error("unsupported ppm geometry/maxval: " + path);
    in.get();  // single whitespace after maxval

    std::vector<unsigned char> raw(static_cast<size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw std::runtime_error("truncated ppm: " + path);

    Grid3D img(3, h, w);
    float* r = img.plane(0);
    float* g = img.plane(1);
    float* b = img.plane(2);
    const size_t n = img.plane_size();
    for (size_t i = 0; i < n; ++i) {
        r[i] = raw[3 * i];
        g[i] = raw[3 * i + 1];
        b[i] = raw[3 * i + 2];
    }
    return img;
}

void save_ppm(const Grid3D& image, const std::string& path) {
    if (image.channels != 3 || image.width < 1 || image.height < 1)
        throw std::invalid_argument("save_ppm: image must be 3xHxW");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);

    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    const float* r = image.plane(0);
    const float* g = image.plane(1);
    const float* b = image.plane(2);
    const size_t n = image.plane_size();
    std::vector<unsigned char> raw(n * 3);
    auto quantize = [](float v) {
        return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
    };
    for (size_t i = 0; i < n; ++i) {
        raw[3 * i] = quantize(r[i]);
        raw[3 * i + 1] = quantize(g[i]);
        raw[3 * i + 2] = quantize(b[i]);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

bool has_ppm_extension(const std::string& path) {
    const size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return false;
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == "ppm";
}

}  // namespace centerface
