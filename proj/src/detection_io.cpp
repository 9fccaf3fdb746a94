#include "centerface/detection_io.hpp"

#include <fstream>
#include <stdexcept>

namespace centerface {

using nlohmann::json;

json detection_document_to_json(const DetectionDocument& doc) {
    json images = json::array();
    for (const ImageDetections& img : doc.images) {
        json dets = json::array();
        for (const Detection& d : img.detections) {
            json lms = json::array();
            for (const Point2f& p : d.landmarks.points) lms.push_back({p.x, p.y});
            dets.push_back({{"box", {d.box.x1, d.box.y1, d.box.x2, d.box.y2}},
                            {"score", d.score},
                            {"landmarks", lms}});
        }
        images.push_back({{"path", img.path},
                          {"input_dims", {img.input_w, img.input_h}},
                          {"detections", dets}});
    }
    return json{{"schema_version", doc.schema_version}, {"images", images}};
}

DetectionDocument detection_document_from_json(const json& j) {
    DetectionDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kDetectionSchemaVersion)
        throw std::runtime_error("unsupported detection schema_version " +
                                 std::to_string(doc.schema_version));

    for (const json& img : j.at("images")) {
        ImageDetections entry;
        entry.path = img.at("path").get<std::string>();
        const json& dims = img.at("input_dims");
        entry.input_w = dims.at(0).get<int>();
        entry.input_h = dims.at(1).get<int>();
        for (const json& det : img.at("detections")) {
            Detection d;
            const json& box = det.at("box");
            d.box = {box.at(0).get<float>(), box.at(1).get<float>(), box.at(2).get<float>(),
                     box.at(3).get<float>()};
            d.score = det.at("score").get<float>();
            const json& lms = det.at("landmarks");
            if (lms.size() != kLandmarkCount)
                throw std::runtime_error("detection landmarks must hold " +
                                         std::to_string(kLandmarkCount) + " points");
            for (int i = 0; i < kLandmarkCount; ++i) {
                d.landmarks.points[i] = {lms.at(i).at(0).get<float>(), lms.at(i).at(1).get<float>()};
                d.landmarks.valid[i] = true;
            }
            entry.detections.push_back(d);
        }
        doc.images.push_back(std::move(entry));
    }
    return doc;
}

void save_detection_document(const DetectionDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << detection_document_to_json(doc).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

DetectionDocument load_detection_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return detection_document_from_json(json::parse(in));
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("schema violation at " + (path.empty() ? "/" : path) + ": " + what);
}

bool type_matches(const json& node, const std::string& type) {
    if (type == "object") return node.is_object();
    if (type == "array") return node.is_array();
    if (type == "string") return node.is_string();
    if (type == "number") return node.is_number();
    if (type == "integer") return node.is_number_integer();
    if (type == "boolean") return node.is_boolean();
    throw std::runtime_error("schema uses unsupported type '" + type + "'");
}

void check(const json& node, const json& schema, const std::string& path) {
    if (schema.contains("const") && node != schema.at("const"))
        fail(path, "expected constant " + schema.at("const").dump() + ", got " + node.dump());

    if (schema.contains("type")) {
        const std::string type = schema.at("type").get<std::string>();
        if (!type_matches(node, type)) fail(path, "expected " + type);
    }

    if (node.is_object()) {
        if (schema.contains("required"))
            for (const json& req : schema.at("required"))
                if (!node.contains(req.get<std::string>()))
                    fail(path, "missing required key '" + req.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema.at("properties").items())
                if (node.contains(key)) check(node.at(key), sub, path + "/" + key);
    }

    if (node.is_array()) {
        if (schema.contains("minItems") && node.size() < schema.at("minItems").get<size_t>())
            fail(path, "expected at least " + schema.at("minItems").dump() + " items");
        if (schema.contains("maxItems") && node.size() > schema.at("maxItems").get<size_t>())
            fail(path, "expected at most " + schema.at("maxItems").dump() + " items");
        if (schema.contains("items")) {
            const json& items = schema.at("items");
            for (size_t i = 0; i < node.size(); ++i)
                check(node.at(i), items, path + "/" + std::to_string(i));
        }
    }
}

}  // namespace

void validate_against_schema(const json& doc, const json& schema) { check(doc, schema, ""); }

}  // namespace centerface
