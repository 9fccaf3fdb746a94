#include "centerface/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "centerface/parallel.hpp"

namespace centerface {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

PhaseStats stats_of(std::vector<double> v) {
    PhaseStats s;
    if (v.empty()) return s;
    s.mean_ms = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    s.median_ms = (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    const size_t p95 = std::min(n - 1, static_cast<size_t>(std::ceil(0.95 * n)) - 1);
    s.p95_ms = v[p95];
    return s;
}

Grid3D synthetic_frame(int w, int h) {
    Grid3D img(3, h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            img.at(0, y, x) = static_cast<float>((x * 255) / std::max(1, w - 1));
            img.at(1, y, x) = static_cast<float>((y * 255) / std::max(1, h - 1));
            img.at(2, y, x) = static_cast<float>(((x + y) * 255) / std::max(1, w + h - 2));
        }
    return img;
}

struct PhaseTimes {
    double preprocess = 0, backend = 0, decode = 0, postprocess = 0, total = 0;
};

// detect_image with a stopwatch between the stages
PhaseTimes timed_detect(Backend& backend, const Grid3D& image, const BackendSpec& spec,
                        const DetectOptions& opt) {
    PhaseTimes pt;
    const auto t_start = Clock::now();

    std::vector<float> scales = opt.post.tta_scales;
    if (scales.empty()) scales.push_back(1.0f);
    std::vector<std::pair<ViewTransform, std::vector<Detection>>> views;
    Grid3D flipped_image;

    const int flip_passes = opt.post.tta_flip ? 2 : 1;
    for (int pass = 0; pass < flip_passes; ++pass) {
        const bool flip = pass == 1;
        if (flip && flipped_image.size() == 0) {
            const auto t = Clock::now();
            flipped_image = mirror_image(image);
            pt.preprocess += ms_since(t);
        }
        const Grid3D& base = flip ? flipped_image : image;

        for (float s : scales) {
            auto t = Clock::now();
            PreprocessResult pre = preprocess(base, opt.target_long_side, spec, s);
            pre.flipped = flip;
            pre.flip_width = static_cast<float>(image.width);
            pt.preprocess += ms_since(t);

            t = Clock::now();
            OutputHeads heads = backend.run(pre);
            validate_heads(heads, pre.input_w, pre.input_h);
            pt.backend += ms_since(t);

            t = Clock::now();
            std::vector<Detection> dets =
                decode_detections(heads, pre.input_w, pre.input_h, opt.decode);
            pt.decode += ms_since(t);

            views.emplace_back(
                ViewTransform{pre.scale, pre.pad, flip, static_cast<float>(image.width)},
                std::move(dets));
        }
    }

    const auto t = Clock::now();
    const std::vector<Detection> merged = tta_merge(views, opt.post);
    (void)merged;
    pt.postprocess = ms_since(t);

    pt.total = ms_since(t_start);
    return pt;
}

}  // namespace

BenchReport run_bench(Backend& backend, const BackendSpec& spec, const DetectOptions& opt,
                      const std::vector<std::pair<int, int>>& sizes, int iterations, int warmup) {
    if (iterations < 1) throw std::invalid_argument("run_bench: iterations must be >= 1");
    if (warmup < 0) throw std::invalid_argument("run_bench: warmup must be >= 0");

    BenchReport report;
    report.warmup = warmup;
    report.iterations = iterations;
    report.threads = max_threads();

    for (const auto& [w, h] : sizes) {
        if (w < 1 || h < 1) throw std::invalid_argument("run_bench: bad frame size");
        const Grid3D frame = synthetic_frame(w, h);

        for (int i = 0; i < warmup; ++i) timed_detect(backend, frame, spec, opt);

        std::vector<double> pre, back, dec, post, total;
        pre.reserve(iterations);
        for (int i = 0; i < iterations; ++i) {
            const PhaseTimes pt = timed_detect(backend, frame, spec, opt);
            pre.push_back(pt.preprocess);
            back.push_back(pt.backend);
            dec.push_back(pt.decode);
            post.push_back(pt.postprocess);
            total.push_back(pt.total);
        }

        SizeReport sr;
        sr.width = w;
        sr.height = h;
        sr.preprocess = stats_of(pre);
        sr.backend = stats_of(back);
        sr.decode = stats_of(dec);
        sr.postprocess = stats_of(post);
        sr.total = stats_of(total);
        sr.phase_sum_mean_ms = sr.preprocess.mean_ms + sr.backend.mean_ms + sr.decode.mean_ms +
                               sr.postprocess.mean_ms;
        report.sizes.push_back(sr);
    }
    return report;
}

namespace {

nlohmann::json phase_json(const PhaseStats& s) {
    return {{"mean_ms", s.mean_ms}, {"median_ms", s.median_ms}, {"p95_ms", s.p95_ms}};
}

}  // namespace

nlohmann::json bench_report_json(const BenchReport& report) {
    nlohmann::json sizes = nlohmann::json::array();
    for (const SizeReport& sr : report.sizes) {
        sizes.push_back({{"width", sr.width},
                         {"height", sr.height},
                         {"phases",
                          {{"preprocess", phase_json(sr.preprocess)},
                           {"backend", phase_json(sr.backend)},
                           {"decode", phase_json(sr.decode)},
                           {"postprocess", phase_json(sr.postprocess)}}},
                         {"total", phase_json(sr.total)},
                         {"phase_sum_mean_ms", sr.phase_sum_mean_ms}});
    }
    return {{"warmup", report.warmup},
            {"iterations", report.iterations},
            {"threads", report.threads},
            {"hardware_note", report.hardware_note},
            {"sizes", sizes}};
}

std::string bench_report_text(const BenchReport& report) {
    std::ostringstream out;
    out << "bench: " << report.iterations << " iters (+" << report.warmup << " warmup), "
        << report.threads << " thread(s)";
    if (!report.hardware_note.empty()) out << ", " << report.hardware_note;
    out << "\n";

    char line[256];
    snprintf(line, sizeof(line), "%-12s %-12s %10s %10s %10s\n", "size", "phase", "mean ms",
             "median ms", "p95 ms");
    out << line;
    for (const SizeReport& sr : report.sizes) {
        const std::string dims = std::to_string(sr.width) + "x" + std::to_string(sr.height);
        const std::pair<const char*, const PhaseStats*> rows[] = {
            {"preprocess", &sr.preprocess},
            {"backend", &sr.backend},
            {"decode", &sr.decode},
            {"postprocess", &sr.postprocess},
            {"total", &sr.total},
        };
        for (const auto& [name, st] : rows) {
            snprintf(line, sizeof(line), "%-12s %-12s %10.3f %10.3f %10.3f\n", dims.c_str(), name,
                     st->mean_ms, st->median_ms, st->p95_ms);
            out << line;
        }
    }
    return out.str();
}

}  // namespace centerface
