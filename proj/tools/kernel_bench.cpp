// Compares the OpenMP kernels against their serial references: timing plus a
// bitwise equality check on the outputs.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "centerface/kernels.hpp"
#include "centerface/parallel.hpp"

using namespace centerface;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Grid2D random_plane(int h, int w, std::mt19937& rng, float lo, float hi) {
    Grid2D g(h, w);
    std::uniform_real_distribution<float> dist(lo, hi);
    for (float& v : g.data) v = dist(rng);
    return g;
}

Grid3D random_image(int h, int w, std::mt19937& rng) {
    Grid3D img(3, h, w);
    std::uniform_real_distribution<float> dist(0.0f, 255.0f);
    for (float& v : img.data) v = dist(rng);
    return img;
}

struct Row {
    std::string kernel;
    std::string size;
    double serial_ms;
    double parallel_ms;
    bool match;
};

void print_rows(const std::vector<Row>& rows) {
    printf("%-18s %-12s %12s %12s %9s %7s\n", "kernel", "size", "serial ms", "parallel ms",
           "speedup", "match");
    for (const Row& r : rows) {
        printf("%-18s %-12s %12.3f %12.3f %8.2fx %7s\n", r.kernel.c_str(), r.size.c_str(),
               r.serial_ms, r.parallel_ms, r.serial_ms / std::max(1e-9, r.parallel_ms),
               r.match ? "yes" : "NO");
    }
}

template <typename F>
double time_reps(int reps, F&& fn) {
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return ms_since(t0) / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 20;
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);
        else if (arg == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
        else {
            fprintf(stderr, "usage: kernel_bench [--reps N] [--threads N]\n");
            return 2;
        }
    }
    set_threads(threads);
    printf("kernel_bench: %d rep(s), %d thread(s)\n", reps, max_threads());

    std::mt19937 rng(4242);
    std::vector<Row> rows;
    const int dims[][2] = {{240, 320}, {480, 640}, {960, 1280}};

    for (const auto& [h, w] : dims) {
        const std::string size = std::to_string(w) + "x" + std::to_string(h);

        {
            const Grid2D pred = random_plane(h, w, rng, 0.01f, 0.99f);
            Grid2D target = random_plane(h, w, rng, 0.0f, 0.95f);
            for (size_t i = 0; i < target.data.size(); i += 97) target.data[i] = 1.0f;

            Grid2D grad_s(h, w), grad_p(h, w);
            kernels::FocalSums sum_s, sum_p;
            const double t_serial = time_reps(
                reps, [&] { sum_s = kernels::serial::focal_plane(pred, target, 2, 4, &grad_s); });
            const double t_par = time_reps(
                reps, [&] { sum_p = kernels::focal_plane(pred, target, 2, 4, &grad_p); });
            const bool match = sum_s.loss == sum_p.loss && sum_s.positives == sum_p.positives &&
                               grad_s.data == grad_p.data;
            rows.push_back({"focal_plane", size, t_serial, t_par, match});
        }

        {
            const Grid2D plane = random_plane(h, w, rng, 0.0f, 1.0f);
            std::vector<std::uint8_t> mask_s, mask_p;
            const double t_serial =
                time_reps(reps, [&] { mask_s = kernels::serial::local_max_mask(plane, 3); });
            const double t_par = time_reps(reps, [&] { mask_p = kernels::local_max_mask(plane, 3); });
            rows.push_back({"local_max_mask", size, t_serial, t_par, mask_s == mask_p});
        }

        {
            const Grid3D img = random_image(h, w, rng);
            Grid3D out_s, out_p;
            const double t_serial = time_reps(reps, [&] {
                out_s = kernels::serial::sample_affine(img, h * 3 / 4, w * 3 / 4, 0.75f, 0.75f, 0, 0);
            });
            const double t_par = time_reps(reps, [&] {
                out_p = kernels::sample_affine(img, h * 3 / 4, w * 3 / 4, 0.75f, 0.75f, 0, 0);
            });
            rows.push_back({"sample_affine", size, t_serial, t_par, out_s.data == out_p.data});
        }

        {
            const Grid3D img = random_image(h, w, rng);
            const float scale[3] = {1.0f, 1.0f, 1.0f};
            const float mean[3] = {127.5f, 127.5f, 127.5f};
            const float stddev[3] = {128.0f, 128.0f, 128.0f};
            Grid3D a = img, b = img;
            const double t_serial =
                time_reps(reps, [&] { kernels::serial::normalize_channels(a, scale, mean, stddev); });
            const double t_par =
                time_reps(reps, [&] { kernels::normalize_channels(b, scale, mean, stddev); });
            // repeated normalization drifts both copies identically, so compare directly
            rows.push_back({"normalize", size, t_serial, t_par, a.data == b.data});
        }
    }

    print_rows(rows);

    bool all_match = true;
    for (const Row& r : rows) all_match = all_match && r.match;
    if (!all_match) {
        fprintf(stderr, "kernel_bench: OUTPUT MISMATCH between serial and parallel kernels\n");
        return 1;
    }
    return 0;
}
