#include "centerface/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "centerface/bench.hpp"
#include "centerface/cv_image_io.hpp"
#include "centerface/detection_io.hpp"
#include "centerface/dnn_backend.hpp"
#include "centerface/draw.hpp"
#include "centerface/evaluation.hpp"
#include "centerface/image_io.hpp"
#include "centerface/parallel.hpp"

namespace centerface::commands {

namespace fs = std::filesystem;
using nlohmann::json;

PlantFixture load_plant_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plant fixture: " + path);
    const json j = json::parse(in);

    PlantFixture fix;
    fix.width = j.at("width").get<int>();
    fix.height = j.at("height").get<int>();
    if (fix.width < 1 || fix.height < 1)
        throw std::runtime_error("plant fixture: bad frame dims");

    for (const json& img : j.at("images")) {
        PlantScene scene;
        scene.path = img.at("path").get<std::string>();
        for (const json& f : img.at("faces")) {
            FaceAnnotation face;
            const json& box = f.at("box");
            face.box = {box.at(0).get<float>(), box.at(1).get<float>(), box.at(2).get<float>(),
                        box.at(3).get<float>()};
            if (f.contains("landmarks")) {
                const json& lms = f.at("landmarks");
                if (lms.size() != kLandmarkCount)
                    throw std::runtime_error("plant fixture: need " +
                                             std::to_string(kLandmarkCount) + " landmark points");
                for (int i = 0; i < kLandmarkCount; ++i) {
                    face.landmarks.points[i] = {lms.at(i).at(0).get<float>(),
                                                lms.at(i).at(1).get<float>()};
                    face.landmarks.valid[i] = true;
                }
                face.landmark_valid = true;
            }
            scene.faces.push_back(face);
        }
        fix.scenes.push_back(std::move(scene));
    }
    return fix;
}

namespace {

const std::set<std::string> kImageExtensions = {".jpg", ".jpeg", ".png", ".bmp", ".ppm"};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> dir_files;
            for (const auto& entry : fs::directory_iterator(in)) {
                if (!entry.is_regular_file()) continue;
                if (kImageExtensions.count(lower(entry.path().extension().string())))
                    dir_files.push_back(entry.path().string());
            }
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

DetectOptions options_from(const DetectArgs& args) {
    DetectOptions opt;
    opt.decode = args.decode;
    opt.post = args.post;
    opt.post.tta_scales = args.scales.empty() ? std::vector<float>{1.0f} : args.scales;
    opt.post.tta_flip = args.flip;
    opt.target_long_side = args.target_long_side;
    return opt;
}

BackendSpec spec_from(const std::string& spec_path) {
    return spec_path.empty() ? BackendSpec{} : load_backend_spec(spec_path);
}

std::string model_path_or_env(const std::string& arg) {
    if (!arg.empty()) return arg;
    const char* env = std::getenv("CENTERFACE_MODEL");
    return env ? env : "";
}

}  // namespace

int cmd_detect(const DetectArgs& args) {
    try {
        set_threads(args.threads);
        const BackendSpec spec = spec_from(args.spec_path);
        const DetectOptions opt = options_from(args);

        DetectionDocument doc;
        bool partial = false;
        size_t total_dets = 0;

        if (!args.plant_fixture.empty()) {
            // model-free run against planted scenes
            const PlantFixture fix = load_plant_fixture(args.plant_fixture);
            const Grid3D blank(3, fix.height, fix.width, 0.0f);
            for (const PlantScene& scene : fix.scenes) {
                auto backend = synthetic_backend(scene.faces, fix.width, fix.height);
                ImageDetections entry;
                entry.path = scene.path;
                entry.input_w = fix.width;
                entry.input_h = fix.height;
                entry.detections = detect_image(*backend, blank, spec, opt);
                total_dets += entry.detections.size();
                doc.images.push_back(std::move(entry));
            }
        } else {
            const std::string model = model_path_or_env(args.model_path);
            if (model.empty()) {
                std::cerr << "detect: need --model (or CENTERFACE_MODEL) or --plants\n";
                return kUsageError;
            }
            auto backend = dnn_backend(model, spec);

            const std::vector<std::string> files = expand_inputs(args.inputs);
            if (files.empty()) {
                std::cerr << "detect: no input images\n";
                return kUsageError;
            }
            for (const std::string& file : files) {
                try {
                    const Grid3D image = load_image_any(file);
                    ImageDetections entry;
                    entry.path = file;
                    entry.input_w = image.width;
                    entry.input_h = image.height;
                    entry.detections = detect_image(*backend, image, spec, opt);
                    total_dets += entry.detections.size();
                    doc.images.push_back(std::move(entry));
                } catch (const std::exception& e) {
                    std::cerr << "detect: skipping " << file << ": " << e.what() << "\n";
                    partial = true;
                }
            }
        }

        save_detection_document(doc, args.output);
        std::cout << "detect: " << doc.images.size() << " image(s), " << total_dets
                  << " detection(s) -> " << args.output << "\n";
        return partial ? kPartialFailure : kOk;
    } catch (const std::exception& e) {
        std::cerr << "detect: " << e.what() << "\n";
        return kUsageError;
    }
}

namespace {

struct GtImage {
    std::vector<Box> boxes;
    std::vector<Box> ignored;
};

bool looks_like_landmark_labels(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        const size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        return line[b] == '#';
    }
    return false;
}

std::map<std::string, GtImage> load_ground_truth(const std::string& path, int* dropped) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ground truth: " + path);

    ParseStats stats;
    std::map<std::string, GtImage> gt;
    if (looks_like_landmark_labels(path)) {
        for (const LandmarkRecord& rec : parse_landmark_labels(in, &stats)) {
            GtImage& img = gt[rec.image_path];
            for (const FaceAnnotation& f : rec.faces) img.boxes.push_back(f.box);
            img.ignored.insert(img.ignored.end(), rec.ignored.begin(), rec.ignored.end());
        }
    } else {
        for (const WiderRecord& rec : parse_wider_bbox(in, &stats)) {
            GtImage& img = gt[rec.image_path];
            img.boxes.insert(img.boxes.end(), rec.boxes.begin(), rec.boxes.end());
            img.ignored.insert(img.ignored.end(), rec.ignored.begin(), rec.ignored.end());
        }
    }
    if (dropped) *dropped = stats.dropped_degenerate;
    return gt;
}

// "<image path> [kept face indices...]" per line; images absent from the
// filter drop out of the evaluation, unlisted faces turn into ignore regions.
void apply_subset_filter(std::map<std::string, GtImage>& gt, const std::string& filter_path) {
    std::ifstream in(filter_path);
    if (!in) throw std::runtime_error("cannot open subset filter: " + filter_path);

    std::map<std::string, std::set<int>> keep;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string path;
        if (!(ss >> path)) continue;
        std::set<int>& indices = keep[path];
        int idx;
        while (ss >> idx) indices.insert(idx);
    }

    std::map<std::string, GtImage> filtered;
    for (const auto& [path, indices] : keep) {
        auto it = gt.find(path);
        if (it == gt.end()) {
            std::cerr << "eval: subset filter names unknown image " << path << "\n";
            continue;
        }
        GtImage img;
        img.ignored = it->second.ignored;
        for (size_t i = 0; i < it->second.boxes.size(); ++i) {
            if (indices.count(static_cast<int>(i)))
                img.boxes.push_back(it->second.boxes[i]);
            else
                img.ignored.push_back(it->second.boxes[i]);
        }
        filtered[path] = std::move(img);
    }
    gt = std::move(filtered);
}

}  // namespace

int cmd_eval(const EvalArgs& args, EvalSummary* out) {
    try {
        const DetectionDocument doc = load_detection_document(args.pred_path);
        int dropped = 0;
        std::map<std::string, GtImage> gt = load_ground_truth(args.gt_path, &dropped);
        if (dropped > 0)
            std::cerr << "eval: " << dropped << " degenerate box(es) moved to ignore list\n";
        if (!args.subset_filter.empty()) apply_subset_filter(gt, args.subset_filter);

        EvalSummary summary;
        std::vector<ScoredLabel> pooled;
        for (const ImageDetections& entry : doc.images) {
            auto it = gt.find(entry.path);
            if (it == gt.end()) {
                std::cerr << "eval: no ground truth for " << entry.path << ", excluded\n";
                ++summary.skipped_images;
                continue;
            }
            const MatchResult mr =
                match_detections(entry.detections, it->second.boxes, args.iou_thresh,
                                 it->second.ignored);
            pooled.insert(pooled.end(), mr.preds.begin(), mr.preds.end());
            summary.total_gt += static_cast<long>(it->second.boxes.size());
            summary.tp += mr.tp;
            summary.fp += mr.fp;
        }

        const PRCurve pr = average_precision(pooled, summary.total_gt);
        const ROCCurve roc = roc_curve(pooled, summary.total_gt);
        summary.ap = pr.ap;
        summary.tpr_at_budget = roc.tpr_at(args.fp_budget);

        if (!args.out_prefix.empty()) {
            std::ofstream prf(args.out_prefix + "_pr.csv");
            prf << "threshold,precision,recall\n";
            for (size_t i = 0; i < pr.thresholds.size(); ++i)
                prf << pr.thresholds[i] << "," << pr.precision[i] << "," << pr.recall[i] << "\n";

            std::ofstream rocf(args.out_prefix + "_roc.csv");
            rocf << "threshold,cum_fp,tpr\n";
            for (size_t i = 0; i < roc.thresholds.size(); ++i)
                rocf << roc.thresholds[i] << "," << roc.cum_fp[i] << "," << roc.tpr[i] << "\n";
            if (!prf || !rocf)
                throw std::runtime_error("cannot write curves to prefix " + args.out_prefix);
        }

        std::cout << "eval: AP " << pr.ap << ", TPR@" << args.fp_budget << "fp "
                  << summary.tpr_at_budget << " (gt " << summary.total_gt << ", tp " << summary.tp
                  << ", fp " << summary.fp << ")\n";
        if (out) *out = summary;
        return summary.skipped_images > 0 ? kPartialFailure : kOk;
    } catch (const std::exception& e) {
        std::cerr << "eval: " << e.what() << "\n";
        return kUsageError;
    }
}

namespace {

std::vector<FaceAnnotation> bench_plants(int w, int h) {
    // a handful of faces spread over the frame so decode has real work
    std::vector<FaceAnnotation> plants;
    const float side = 0.12f * std::min(w, h);
    for (int i = 0; i < 5; ++i) {
        const float cx = (0.15f + 0.17f * i) * w;
        const float cy = (0.2f + 0.15f * i) * h;
        const float s = side + 4.0f * i;
        FaceAnnotation f;
        f.box = {cx - s / 2, cy - s / 2, cx + s / 2, cy + s / 2};
        plants.push_back(f);
    }
    return plants;
}

std::pair<int, int> parse_size(const std::string& s) {
    const size_t x = s.find('x');
    if (x == std::string::npos) throw std::runtime_error("bad size '" + s + "', want WxH");
    const int w = std::stoi(s.substr(0, x));
    const int h = std::stoi(s.substr(x + 1));
    if (w < 1 || h < 1) throw std::runtime_error("bad size '" + s + "'");
    return {w, h};
}

}  // namespace

int cmd_bench(const BenchArgs& args) {
    try {
        set_threads(args.threads);
        const BackendSpec spec;
        DetectOptions opt;

        BenchReport report;
        const std::string model = model_path_or_env(args.model_path);
        std::unique_ptr<Backend> model_backend;
        if (!model.empty()) model_backend = dnn_backend(model, spec);

        for (const std::string& size_str : args.sizes) {
            const auto [w, h] = parse_size(size_str);
            // the synthetic backend carries per-frame plants, so build one per size
            std::unique_ptr<Backend> synth;
            Backend* backend = model_backend.get();
            if (!backend) {
                synth = synthetic_backend(bench_plants(w, h), w, h);
                backend = synth.get();
            }
            const BenchReport one =
                run_bench(*backend, spec, opt, {{w, h}}, args.iterations, args.warmup);
            report.warmup = one.warmup;
            report.iterations = one.iterations;
            report.threads = one.threads;
            report.sizes.push_back(one.sizes.at(0));
        }
        report.hardware_note = args.note.empty()
                                   ? (model.empty() ? "synthetic backend" : "model " + model)
                                   : args.note;

        std::cout << bench_report_text(report);
        if (!args.json_out.empty()) {
            std::ofstream out(args.json_out);
            out << bench_report_json(report).dump(2) << "\n";
            if (!out) throw std::runtime_error("cannot write " + args.json_out);
            std::cout << "bench: wrote " << args.json_out << "\n";
        }
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "bench: " << e.what() << "\n";
        return kUsageError;
    }
}

int cmd_visualize(const VisualizeArgs& args) {
    try {
        const DetectionDocument doc = load_detection_document(args.pred_path);
        fs::create_directories(args.out_dir);

        bool partial = false;
        int written = 0;
        for (const ImageDetections& entry : doc.images) {
            fs::path src(entry.path);
            if (src.is_relative() && !args.image_root.empty()) src = fs::path(args.image_root) / src;
            try {
                Grid3D image = load_image_any(src.string());
                render_overlay(image, entry.detections, args.score_threshold);
                const fs::path out = fs::path(args.out_dir) / src.filename();
                save_image_any(image, out.string());
                ++written;
            } catch (const std::exception& e) {
                std::cerr << "visualize: skipping " << entry.path << ": " << e.what() << "\n";
                partial = true;
            }
        }
        std::cout << "visualize: wrote " << written << " image(s) to " << args.out_dir << "\n";
        return partial ? kPartialFailure : kOk;
    } catch (const std::exception& e) {
        std::cerr << "visualize: " << e.what() << "\n";
        return kUsageError;
    }
}

namespace {

std::string sanitize(const std::string& path) {
    std::string out = path;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_')
            c = '_';
    return out;
}

}  // namespace

int cmd_encode(const EncodeArgs& args) {
    try {
        if (args.width < 1 || args.height < 1 || args.width % kStride != 0 ||
            args.height % kStride != 0) {
            std::cerr << "encode: --width/--height must be positive multiples of " << kStride
                      << "\n";
            return kUsageError;
        }
        std::ifstream in(args.labels_path);
        if (!in) throw std::runtime_error("cannot open labels: " + args.labels_path);

        ParseStats stats;
        std::vector<LandmarkRecord> records;
        if (looks_like_landmark_labels(args.labels_path)) {
            records = parse_landmark_labels(in, &stats);
        } else {
            for (const WiderRecord& rec : parse_wider_bbox(in, &stats)) {
                LandmarkRecord r;
                r.image_path = rec.image_path;
                for (const Box& b : rec.boxes) {
                    FaceAnnotation f;
                    f.box = b;
                    r.faces.push_back(f);
                }
                records.push_back(std::move(r));
            }
        }
        if (stats.dropped_degenerate > 0)
            std::cerr << "encode: dropped " << stats.dropped_degenerate
                      << " degenerate box(es)\n";

        fs::create_directories(args.out_dir);
        json index = json::array();
        for (const LandmarkRecord& rec : records) {
            const TargetMaps maps = encode_targets(rec.faces, args.width, args.height);
            const std::string name = sanitize(rec.image_path) + ".cftm";
            save_target_maps(maps, (fs::path(args.out_dir) / name).string());
            index.push_back({{"path", rec.image_path},
                             {"maps", name},
                             {"faces_encoded", maps.positives.size()}});
        }
        std::ofstream idx(fs::path(args.out_dir) / "index.json");
        idx << json{{"grid_input", {args.width, args.height}}, {"images", index}}.dump(2) << "\n";
        if (!idx) throw std::runtime_error("cannot write index.json");

        std::cout << "encode: " << records.size() << " image(s) -> " << args.out_dir << "\n";
        return kOk;
    } catch (const std::exception& e) {
        std::cerr << "encode: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace centerface::commands
