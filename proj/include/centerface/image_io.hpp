#pragma once

#include <string>

#include "centerface/grid.hpp"

namespace centerface {

// Binary PPM (P6, maxval 255). Kept dependency-free so golden-image tests
// don't hinge on a codec library's encoder. Values round-trip as exact
// integers 0..255 stored in float planes, RGB order.
Grid3D load_ppm(const std::string& path);
void save_ppm(const Grid3D& image, const std::string& path);

bool has_ppm_extension(const std::string& path);

}  // namespace centerface
