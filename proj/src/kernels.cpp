#include "centerface/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Both variants of every kernel run the same per-row worker and reduce row
// partials in row order, so parallel results are bit-identical to serial no
// matter the thread count.
namespace centerface::kernels {

namespace {

constexpr double kEps = 1e-6;

struct RowFocal {
    double loss = 0.0;
    long positives = 0;
};

RowFocal focal_row(const float* pred, const float* target, int width, double alpha, double beta,
                   float* grad) {
    RowFocal out;
    for (int x = 0; x < width; ++x) {
        const double raw = pred[x];
        const double p = std::clamp(raw, kEps, 1.0 - kEps);
        const double y = target[x];
        double term, dterm;
        if (y == 1.0) {
            ++out.positives;
            const double om = 1.0 - p;
            const double pow_om = std::pow(om, alpha);
            term = -pow_om * std::log(p);
            dterm = alpha * std::pow(om, alpha - 1.0) * std::log(p) - pow_om / p;
        } else {
            const double w = std::pow(1.0 - y, beta);
            const double pow_p = std::pow(p, alpha);
            term = -w * pow_p * std::log(1.0 - p);
            dterm = -w * (alpha * std::pow(p, alpha - 1.0) * std::log(1.0 - p) - pow_p / (1.0 - p));
        }
        out.loss += term;
        if (grad) {
            // Outside the clamp range the loss is flat in the raw prediction.
            grad[x] = (raw < kEps || raw > 1.0 - kEps) ? 0.0f : static_cast<float>(dterm);
        }
    }
    return out;
}

void local_max_row(const Grid2D& plane, int window, int y, std::uint8_t* mask_row) {
    const int k = window / 2;
    const int y0 = std::max(0, y - k);
    const int y1 = std::min(plane.height - 1, y + k);
    for (int x = 0; x < plane.width; ++x) {
        const float v = plane.at(y, x);
        const int x0 = std::max(0, x - k);
        const int x1 = std::min(plane.width - 1, x + k);
        bool is_max = true;
        for (int yy = y0; yy <= y1 && is_max; ++yy) {
            const float* row = plane.row(yy);
            for (int xx = x0; xx <= x1; ++xx) {
                if (row[xx] > v) {
                    is_max = false;
                    break;
                }
            }
        }
        mask_row[x] = is_max ? 1 : 0;
    }
}

void sample_row(const Grid3D& src, Grid3D& dst, int c, int y, double scale_x, double scale_y,
                double offset_x, double offset_y) {
    const double sv = (y + 0.5 - offset_y) / scale_y - 0.5;
    const int iy = static_cast<int>(std::floor(sv));
    const double fy = sv - iy;
    const float* plane = src.plane(c);
    float* out = dst.plane(c) + static_cast<size_t>(y) * dst.width;

    auto read = [&](int yy, int xx) -> double {
        if (yy < 0 || yy >= src.height || xx < 0 || xx >= src.width) return 0.0;
        return plane[static_cast<size_t>(yy) * src.width + xx];
    };

    for (int x = 0; x < dst.width; ++x) {
        const double su = (x + 0.5 - offset_x) / scale_x - 0.5;
        const int ix = static_cast<int>(std::floor(su));
        const double fx = su - ix;
        const double top = read(iy, ix) * (1.0 - fx) + read(iy, ix + 1) * fx;
        const double bot = read(iy + 1, ix) * (1.0 - fx) + read(iy + 1, ix + 1) * fx;
        out[x] = static_cast<float>(top * (1.0 - fy) + bot * fy);
    }
}

void normalize_row(Grid3D& image, int c, int y, const float scale[3], const float mean[3],
                   const float stddev[3]) {
    float* row = image.plane(c) + static_cast<size_t>(y) * image.width;
    const float s = scale[c], m = mean[c], d = stddev[c];
    for (int x = 0; x < image.width; ++x) row[x] = (row[x] * s - m) / d;
}

void check_focal_shapes(const Grid2D& pred, const Grid2D& target, const Grid2D* grad) {
    if (!pred.same_shape(target) || (grad && !pred.same_shape(*grad)))
        throw std::invalid_argument("focal_plane: shape mismatch");
}

void check_window(int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("local_max_mask: window must be odd and >= 1");
}

FocalSums reduce_focal(const std::vector<RowFocal>& rows) {
    FocalSums out;
    for (const RowFocal& r : rows) {
        out.loss += r.loss;
        out.positives += r.positives;
    }
    return out;
}

}  // namespace

FocalSums focal_plane(const Grid2D& pred, const Grid2D& target, float alpha, float beta,
                      Grid2D* grad) {
    check_focal_shapes(pred, target, grad);
    std::vector<RowFocal> rows(pred.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < pred.height; ++y)
        rows[y] = focal_row(pred.row(y), target.row(y), pred.width, alpha, beta,
                            grad ? grad->row(y) : nullptr);
    return reduce_focal(rows);
}

std::vector<std::uint8_t> local_max_mask(const Grid2D& plane, int window) {
    check_window(window);
    std::vector<std::uint8_t> mask(plane.size());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < plane.height; ++y)
        local_max_row(plane, window, y, mask.data() + static_cast<size_t>(y) * plane.width);
    return mask;
}

Grid3D sample_affine(const Grid3D& src, int out_h, int out_w, float scale_x, float scale_y,
                     float offset_x, float offset_y) {
    Grid3D dst(src.channels, out_h, out_w);
#pragma omp parallel for schedule(static) collapse(2)
    for (int c = 0; c < src.channels; ++c)
        for (int y = 0; y < out_h; ++y) sample_row(src, dst, c, y, scale_x, scale_y, offset_x, offset_y);
    return dst;
}

void normalize_channels(Grid3D& image, const float scale[3], const float mean[3],
                        const float stddev[3]) {
#pragma omp parallel for schedule(static) collapse(2)
    for (int c = 0; c < image.channels; ++c)
        for (int y = 0; y < image.height; ++y) normalize_row(image, c, y, scale, mean, stddev);
}

namespace serial {

FocalSums focal_plane(const Grid2D& pred, const Grid2D& target, float alpha, float beta,
                      Grid2D* grad) {
    check_focal_shapes(pred, target, grad);
    std::vector<RowFocal> rows(pred.height);
    for (int y = 0; y < pred.height; ++y)
        rows[y] = focal_row(pred.row(y), target.row(y), pred.width, alpha, beta,
                            grad ? grad->row(y) : nullptr);
    return reduce_focal(rows);
}

std::vector<std::uint8_t> local_max_mask(const Grid2D& plane, int window) {
    check_window(window);
    std::vector<std::uint8_t> mask(plane.size());
    for (int y = 0; y < plane.height; ++y)
        local_max_row(plane, window, y, mask.data() + static_cast<size_t>(y) * plane.width);
    return mask;
}

Grid3D sample_affine(const Grid3D& src, int out_h, int out_w, float scale_x, float scale_y,
                     float offset_x, float offset_y) {
    Grid3D dst(src.channels, out_h, out_w);
    for (int c = 0; c < src.channels; ++c)
        for (int y = 0; y < out_h; ++y) sample_row(src, dst, c, y, scale_x, scale_y, offset_x, offset_y);
    return dst;
}

void normalize_channels(Grid3D& image, const float scale[3], const float mean[3],
                        const float stddev[3]) {
    for (int c = 0; c < image.channels; ++c)
        for (int y = 0; y < image.height; ++y) normalize_row(image, c, y, scale, mean, stddev);
}

}  // namespace serial

}  // namespace centerface::kernels
