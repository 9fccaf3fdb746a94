#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "centerface/pipeline.hpp"

namespace centerface {

struct PhaseStats {
    double mean_ms = 0.0;
    double median_ms = 0.0;
    double p95_ms = 0.0;
};

struct SizeReport {
    int width = 0;
    int height = 0;
    PhaseStats preprocess, backend, decode, postprocess, total;
    double phase_sum_mean_ms = 0.0;  // sanity: should track total.mean_ms closely
};

struct BenchReport {
    int warmup = 0;
    int iterations = 0;
    int threads = 0;
    std::string hardware_note;
    std::vector<SizeReport> sizes;
};

// Times the single-image pipeline phase by phase on synthetic in-memory
// frames of each requested size. The backend is run as-is (pass the
// synthetic backend for a model-free run).
BenchReport run_bench(Backend& backend, const BackendSpec& spec, const DetectOptions& opt,
                      const std::vector<std::pair<int, int>>& sizes, int iterations, int warmup);

std::string bench_report_text(const BenchReport& report);
nlohmann::json bench_report_json(const BenchReport& report);

}  // namespace centerface
