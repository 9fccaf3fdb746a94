#include "centerface/annotations.hpp"

#include <cmath>
#include <sstream>

namespace centerface {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool next_line(std::istream& in, std::string& line, int& lineno) {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
}

// Every whitespace-separated token must parse as a number.
std::vector<double> parse_numbers(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ParseError(lineno, "expected a number, got '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError(lineno, "expected a number, got '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

Box box_from_xywh(double x, double y, double w, double h) {
    return {static_cast<float>(x), static_cast<float>(y), static_cast<float>(x + w),
            static_cast<float>(y + h)};
}

bool degenerate(double w, double h) { return w <= 0.0 || h <= 0.0; }

}  // namespace

std::vector<WiderRecord> parse_wider_bbox(std::istream& in, ParseStats* stats) {
    std::vector<WiderRecord> records;
    std::string line;
    int lineno = 0;

    while (next_line(in, line, lineno)) {
        const std::string path = trim(line);
        if (path.empty()) continue;  // tolerate stray blank lines between records

        WiderRecord rec;
        rec.image_path = path;

        if (!next_line(in, line, lineno))
            throw ParseError(lineno + 1, "missing face count after '" + path + "'");
        const int count_line = lineno;
        const std::vector<double> counts = parse_numbers(line, count_line);
        if (counts.size() != 1 || counts[0] < 0 || counts[0] != std::floor(counts[0]))
            throw ParseError(count_line, "face count must be a single non-negative integer");
        const int n = static_cast<int>(counts[0]);

        if (n == 0) {
            // the format still carries one all-zero face line
            if (!next_line(in, line, lineno))
                throw ParseError(lineno + 1, "missing placeholder line after count 0");
            const std::vector<double> nums = parse_numbers(line, lineno);
            if (nums.size() < 4) throw ParseError(lineno, "placeholder line needs >= 4 fields");
            for (double v : nums)
                if (v != 0.0) throw ParseError(lineno, "placeholder after count 0 must be all zeros");
        } else {
            for (int i = 0; i < n; ++i) {
                if (!next_line(in, line, lineno))
                    throw ParseError(lineno + 1, "expected " + std::to_string(n) +
                                                     " face lines for '" + path + "'");
                const std::vector<double> nums = parse_numbers(line, lineno);
                if (nums.size() < 4)
                    throw ParseError(lineno, "face line needs at least x y w h");
                Box b = box_from_xywh(nums[0], nums[1], nums[2], nums[3]);
                if (degenerate(nums[2], nums[3])) {
                    rec.ignored.push_back(b);
                    if (stats) ++stats->dropped_degenerate;
                } else {
                    rec.boxes.push_back(b);
                }
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<LandmarkRecord> parse_landmark_labels(std::istream& in, ParseStats* stats) {
    std::vector<LandmarkRecord> records;
    std::string line;
    int lineno = 0;
    bool have_record = false;
    LandmarkRecord current;

    auto flush = [&]() {
        if (have_record) records.push_back(std::move(current));
        current = {};
    };

    while (next_line(in, line, lineno)) {
        const std::string t = trim(line);
        if (t.empty()) continue;

        if (t[0] == '#') {
            flush();
            have_record = true;
            current.image_path = trim(t.substr(1));
            if (current.image_path.empty()) throw ParseError(lineno, "header with empty image path");
            continue;
        }

        if (!have_record)
            throw ParseError(lineno, "face line before any '# <path>' header");

        const std::vector<double> nums = parse_numbers(t, lineno);
        // x y w h + five (x, y, visibility) triples
        if (nums.size() < 19)
            throw ParseError(lineno, "face line needs >= 19 fields, got " +
                                         std::to_string(nums.size()));

        Box b = box_from_xywh(nums[0], nums[1], nums[2], nums[3]);
        if (degenerate(nums[2], nums[3])) {
            current.ignored.push_back(b);
            if (stats) ++stats->dropped_degenerate;
            continue;
        }

        FaceAnnotation face;
        face.box = b;
        for (int i = 0; i < kLandmarkCount; ++i) {
            const double lx = nums[4 + 3 * i];
            const double ly = nums[5 + 3 * i];
            const double vis = nums[6 + 3 * i];
            face.landmarks.points[i] = {static_cast<float>(lx), static_cast<float>(ly)};
            face.landmarks.valid[i] = (vis != -1.0);
        }
        face.landmark_valid = face.landmarks.all_valid();
        current.faces.push_back(face);
    }
    flush();
    return records;
}

}  // namespace centerface
