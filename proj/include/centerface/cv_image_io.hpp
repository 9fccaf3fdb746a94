#pragma once

#include <string>

#include "centerface/grid.hpp"

namespace centerface {

// Image I/O with codec support: .ppm goes through the native reader/writer,
// anything else through OpenCV imgcodecs. Same grid contract as image_io.hpp.
Grid3D load_image_any(const std::string& path);
void save_image_any(const Grid3D& image, const std::string& path);

}  // namespace centerface
