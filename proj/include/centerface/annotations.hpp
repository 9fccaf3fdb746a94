#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "centerface/geometry.hpp"
#include "centerface/grid.hpp"

namespace centerface {

struct FaceAnnotation {
    Box box;
    LandmarkSet landmarks;
    // Whole-face flag: set only when all five points are usable. Mixed
    // visibility downgrades the whole face.
    bool landmark_valid = false;
};

struct Sample {
    Grid3D image;  // 3xHxW RGB, 0..255
    std::vector<FaceAnnotation> faces;
    std::string source_path;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

struct ParseStats {
    int dropped_degenerate = 0;  // boxes with w <= 0 or h <= 0, moved to `ignored`
};

// Box ground truth list. Layout per record:
//   <image path>
//   <face count>
//   <x> <y> <w> <h> [extra columns ignored]     (face count lines)
// A count of 0 must still be followed by one all-zero line. Degenerate boxes
// (w or h <= 0) are dropped into `ignored` and counted in stats. Malformed
// input throws ParseError carrying the 1-based line number.
struct WiderRecord {
    std::string image_path;
    std::vector<Box> boxes;
    std::vector<Box> ignored;
};
std::vector<WiderRecord> parse_wider_bbox(std::istream& in, ParseStats* stats = nullptr);

// Box + five-landmark ground truth. Layout:
//   # <image path>
//   <x> <y> <w> <h>  <lx> <ly> <vis>  x5  [extra columns ignored]
// Visibility -1 marks that point invalid; a face with any invalid point gets
// landmark_valid = false. Faces whose landmark fields are all -1 simply have
// no annotated landmarks.
struct LandmarkRecord {
    std::string image_path;
    std::vector<FaceAnnotation> faces;
    std::vector<Box> ignored;
};
std::vector<LandmarkRecord> parse_landmark_labels(std::istream& in, ParseStats* stats = nullptr);

}  // namespace centerface
