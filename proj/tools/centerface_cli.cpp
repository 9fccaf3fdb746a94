#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centerface/commands.hpp"

using namespace centerface;

int main(int argc, char** argv) {
    CLI::App app{"centerface: anchor-free face detection toolkit"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "read options from an INI file");
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "print the effective configuration and exit");

    int threads = 0;
    app.add_option("--threads", threads, "worker thread count (0 = hardware default)");

    // ---- detect ----------------------------------------------------------
    commands::DetectArgs dargs;
    int max_side = 0;
    CLI::App* detect = app.add_subcommand("detect", "run detection, write a detection document");
    detect->add_option("inputs", dargs.inputs, "image files or directories");
    detect->add_option("--model", dargs.model_path,
                       "onnx model path (falls back to $CENTERFACE_MODEL)");
    detect->add_option("--plants", dargs.plant_fixture,
                       "planted-scene fixture for a model-free run");
    detect->add_option("-o,--output", dargs.output, "output JSON path")->capture_default_str();
    detect->add_option("--spec", dargs.spec_path, "backend spec config file");
    detect->add_option("--scales", dargs.scales, "test-time scale factors")->expected(-1);
    detect->add_flag("--flip", dargs.flip, "add mirrored test-time views");
    detect->add_option("--threshold", dargs.decode.score_threshold, "score threshold")
        ->capture_default_str();
    detect->add_option("--top-k", dargs.decode.top_k, "max peaks per view")->capture_default_str();
    detect->add_option("--nms-iou", dargs.post.nms_iou, "suppression IoU")->capture_default_str();
    detect->add_option("--vote-iou", dargs.post.vote_iou, "box voting IoU")->capture_default_str();
    detect->add_option("--max-side", max_side,
                       "downscale inputs so the long side fits (0 = keep size)");

    // ---- eval ------------------------------------------------------------
    commands::EvalArgs eargs;
    CLI::App* eval = app.add_subcommand("eval", "score a detection document against ground truth");
    eval->add_option("predictions", eargs.pred_path, "detection document")->required();
    eval->add_option("ground_truth", eargs.gt_path, "annotation file")->required();
    eval->add_option("--subset", eargs.subset_filter, "subset filter file");
    eval->add_option("--iou", eargs.iou_thresh, "match IoU threshold")->capture_default_str();
    eval->add_option("--fp-budget", eargs.fp_budget, "ROC false-positive budget")
        ->capture_default_str();
    eval->add_option("--curves", eargs.out_prefix, "write <prefix>_pr.csv and <prefix>_roc.csv");

    // ---- bench -----------------------------------------------------------
    commands::BenchArgs bargs;
    CLI::App* bench = app.add_subcommand("bench", "time the pipeline on synthetic frames");
    bench->add_option("--model", bargs.model_path, "onnx model (default: synthetic backend)");
    bench->add_option("--sizes", bargs.sizes, "frame sizes, WxH")->expected(-1)
        ->capture_default_str();
    bench->add_option("--iters", bargs.iterations, "timed iterations")->capture_default_str();
    bench->add_option("--warmup", bargs.warmup, "warmup iterations")->capture_default_str();
    bench->add_option("--json", bargs.json_out, "also write the report as JSON");
    bench->add_option("--note", bargs.note, "hardware note for the report");

    // ---- visualize -------------------------------------------------------
    commands::VisualizeArgs vargs;
    CLI::App* visualize = app.add_subcommand("visualize", "draw detections onto their images");
    visualize->add_option("predictions", vargs.pred_path, "detection document")->required();
    visualize->add_option("--image-root", vargs.image_root, "prefix for relative image paths");
    visualize->add_option("--out-dir", vargs.out_dir, "output directory")->capture_default_str();
    visualize->add_option("--threshold", vargs.score_threshold, "min score to draw")
        ->capture_default_str();

    // ---- encode ----------------------------------------------------------
    commands::EncodeArgs encargs;
    CLI::App* encode = app.add_subcommand("encode", "encode annotations into training target maps");
    encode->add_option("labels", encargs.labels_path, "annotation file")->required();
    encode->add_option("--width", encargs.width, "frame width (multiple of 4)")->required();
    encode->add_option("--height", encargs.height, "frame height (multiple of 4)")->required();
    encode->add_option("--out-dir", encargs.out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? commands::kOk : commands::kUsageError;
    }

    if (dump_config) {
        std::cout << app.config_to_str(true, true);
        return commands::kOk;
    }

    dargs.threads = threads;
    bargs.threads = threads;
    if (max_side > 0) dargs.target_long_side = max_side;

    if (*detect) return commands::cmd_detect(dargs);
    if (*eval) return commands::cmd_eval(eargs);
    if (*bench) return commands::cmd_bench(bargs);
    if (*visualize) return commands::cmd_visualize(vargs);
    if (*encode) return commands::cmd_encode(encargs);

    std::cerr << app.help();
    return commands::kUsageError;
}
