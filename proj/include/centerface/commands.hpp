#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centerface/backend.hpp"
#include "centerface/pipeline.hpp"

// Tool entry points, kept out of main() so tests can drive them directly.
// Exit codes: 0 success, 1 partial failure (some inputs skipped), 2 bad
// usage/config.
namespace centerface::commands {

inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kUsageError = 2;

// Planted-scene fixture for model-free runs: a document of images with known
// faces, all in original-image coordinates.
struct PlantScene {
    std::string path;
    std::vector<FaceAnnotation> faces;
};
struct PlantFixture {
    int width = 0;
    int height = 0;
    std::vector<PlantScene> scenes;
};
PlantFixture load_plant_fixture(const std::string& path);

struct DetectArgs {
    std::string model_path;     // empty: fall back to $CENTERFACE_MODEL, else synthetic
    std::string plant_fixture;  // synthetic mode input (mutually exclusive with model)
    std::vector<std::string> inputs;
    std::string output = "detections.json";
    std::string spec_path;  // BackendSpec config file; defaults when empty
    std::vector<float> scales{1.0f};
    bool flip = false;
    DecodeConfig decode;
    PostConfig post;
    std::optional<int> target_long_side;
    int threads = 0;
};
int cmd_detect(const DetectArgs& args);

struct EvalArgs {
    std::string pred_path;
    std::string gt_path;
    std::string subset_filter;  // optional: "<image-path> [kept face indices...]" lines
    std::string out_prefix;     // writes <prefix>_pr.csv and <prefix>_roc.csv when set
    float iou_thresh = 0.5f;
    long fp_budget = 1000;
};
// Prints AP / TPR@budget; result also available through eval_run below.
struct EvalSummary {
    double ap = 0.0;
    double tpr_at_budget = 0.0;
    long total_gt = 0;
    long tp = 0;
    long fp = 0;
    int skipped_images = 0;
};
int cmd_eval(const EvalArgs& args, EvalSummary* out = nullptr);

struct BenchArgs {
    std::string model_path;  // empty: synthetic backend
    std::vector<std::string> sizes{"640x480", "1280x720", "1920x1080"};
    int iterations = 50;
    int warmup = 5;
    int threads = 0;
    std::string json_out;
    std::string note;
};
int cmd_bench(const BenchArgs& args);

struct VisualizeArgs {
    std::string pred_path;
    std::string image_root;  // prefix for relative document paths
    std::string out_dir = ".";
    float score_threshold = 0.35f;
};
int cmd_visualize(const VisualizeArgs& args);

struct EncodeArgs {
    std::string labels_path;  // landmark-label or box-list format (auto-detected)
    int width = 0;            // frame the annotations live in; multiples of 4
    int height = 0;
    std::string out_dir = ".";
};
int cmd_encode(const EncodeArgs& args);

}  // namespace centerface::commands
