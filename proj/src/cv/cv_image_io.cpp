#include "centerface/cv_image_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <opencv2/imgcodecs.hpp>

#include "centerface/image_io.hpp"

namespace centerface {

Grid3D load_image_any(const std::string& path) {
    if (has_ppm_extension(path)) return load_ppm(path);

    const cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
    if (bgr.empty()) throw std::runtime_error("cannot read image: " + path);

    Grid3D img(3, bgr.rows, bgr.cols);
    for (int y = 0; y < bgr.rows; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            img.at(0, y, x) = row[x][2];
            img.at(1, y, x) = row[x][1];
            img.at(2, y, x) = row[x][0];
        }
    }
    return img;
}

void save_image_any(const Grid3D& image, const std::string& path) {
    if (image.channels != 3 || image.width < 1 || image.height < 1)
        throw std::invalid_argument("save_image_any: image must be 3xHxW");
    if (has_ppm_extension(path)) {
        save_ppm(image, path);
        return;
    }

    cv::Mat bgr(image.height, image.width, CV_8UC3);
    auto quantize = [](float v) {
        return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
    };
    for (int y = 0; y < image.height; ++y) {
        cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < image.width; ++x) {
            row[x][2] = quantize(image.at(0, y, x));
            row[x][1] = quantize(image.at(1, y, x));
            row[x][0] = quantize(image.at(2, y, x));
        }
    }
    if (!cv::imwrite(path, bgr)) throw std::runtime_error("cannot write image: " + path);
}

}  // namespace centerface
