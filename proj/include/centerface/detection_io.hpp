#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "centerface/geometry.hpp"

namespace centerface {

inline constexpr int kDetectionSchemaVersion = 1;

struct ImageDetections {
    std::string path;
    int input_w = 0;  // original image dims the coordinates refer to
    int input_h = 0;
    std::vector<Detection> detections;
};

struct DetectionDocument {
    int schema_version = kDetectionSchemaVersion;
    std::vector<ImageDetections> images;
};

nlohmann::json detection_document_to_json(const DetectionDocument& doc);
DetectionDocument detection_document_from_json(const nlohmann::json& j);

void save_detection_document(const DetectionDocument& doc, const std::string& path);
DetectionDocument load_detection_document(const std::string& path);

// Structural validation against a schema document (the checked-in fixture
// under tests/fixtures). Supports the subset actually used there: type,
// properties, required, items, minItems/maxItems, const. Throws
// std::runtime_error with a JSON-pointer-ish path on the first violation.
void validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace centerface
