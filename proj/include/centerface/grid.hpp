#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace centerface {

// Dense row-major float plane indexed (y, x).
struct Grid2D {
    int height = 0;
    int width = 0;
    std::vector<float> data;

    Grid2D() = default;
    Grid2D(int h, int w, float fill = 0.0f)
        : height(h), width(w), data(static_cast<size_t>(h) * static_cast<size_t>(w), fill) {}

    bool contains(int y, int x) const { return y >= 0 && y < height && x >= 0 && x < width; }

    float& at(int y, int x) {
        assert(contains(y, x));
        return data[static_cast<size_t>(y) * width + x];
    }
    float at(int y, int x) const {
        assert(contains(y, x));
        return data[static_cast<size_t>(y) * width + x];
    }

    float* row(int y) { return data.data() + static_cast<size_t>(y) * width; }
    const float* row(int y) const { return data.data() + static_cast<size_t>(y) * width; }

    size_t size() const { return data.size(); }
    bool same_shape(const Grid2D& o) const { return height == o.height && width == o.width; }
};

// Dense channel-major float volume indexed (c, y, x). Images use 3 channels,
// RGB order, values 0..255.
struct Grid3D {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<float> data;

    Grid3D() = default;
    Grid3D(int c, int h, int w, float fill = 0.0f)
        : channels(c), height(h), width(w),
          data(static_cast<size_t>(c) * h * w, fill) {}

    bool contains(int c, int y, int x) const {
        return c >= 0 && c < channels && y >= 0 && y < height && x >= 0 && x < width;
    }

    float& at(int c, int y, int x) {
        assert(contains(c, y, x));
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        assert(contains(c, y, x));
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }

    float* plane(int c) { return data.data() + static_cast<size_t>(c) * height * width; }
    const float* plane(int c) const { return data.data() + static_cast<size_t>(c) * height * width; }

    size_t size() const { return data.size(); }
    size_t plane_size() const { return static_cast<size_t>(height) * width; }
    bool same_shape(const Grid3D& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
};

// True when every element is finite (no NaN/inf). Grids coming out of the
// documented operations must satisfy this.
bool all_finite(const Grid2D& g);
bool all_finite(const Grid3D& g);

}  // namespace centerface
