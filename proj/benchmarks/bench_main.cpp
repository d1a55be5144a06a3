#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sarbox/eval.hpp"
#include "sarbox/fusion.hpp"
#include "sarbox/geometry.hpp"
#include "sarbox/masks.hpp"
#include "sarbox/speckle.hpp"

namespace {

using namespace sarbox;

std::vector<ObbBox> make_boxes(size_t n, bool scored, uint64_t seed = 99) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 120.0), side(4.0, 24.0), ang(-1.5, 1.5),
        conf(0.05, 1.0);
    std::vector<ObbBox> boxes;
    boxes.reserve(n);
    for (size_t i = 0; i < n; ++i)
        boxes.push_back(canonicalize_obb(pos(rng), pos(rng), side(rng), side(rng), ang(rng),
                                         scored ? std::optional<double>(conf(rng)) : std::nullopt));
    return boxes;
}

void BM_ObbIou(benchmark::State& state) {
    const auto boxes = make_boxes(64, false);
    size_t i = 0;
    for (auto _ : state) {
        const ObbBox& a = boxes[i % boxes.size()];
        const ObbBox& b = boxes[(i * 7 + 3) % boxes.size()];
        benchmark::DoNotOptimize(obb_iou(a, b));
        ++i;
    }
}
BENCHMARK(BM_ObbIou);

void BM_ObbIouRaster(benchmark::State& state) {
    const ObbBox a = canonicalize_obb(10, 10, 30, 12, 0.4);
    const ObbBox b = canonicalize_obb(14, 8, 26, 14, -0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(obb_iou_raster(a, b, static_cast<int>(state.range(0))));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ObbIouRaster)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_RotatedNms(benchmark::State& state) {
    const auto boxes = make_boxes(static_cast<size_t>(state.range(0)), true);
    for (auto _ : state) benchmark::DoNotOptimize(rotated_nms(boxes, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RotatedNms)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void BM_Wrbf(benchmark::State& state) {
    const auto det = make_boxes(static_cast<size_t>(state.range(0)), true, 7);
    const auto seg = make_boxes(static_cast<size_t>(state.range(0)) / 2, true, 8);
    for (auto _ : state) benchmark::DoNotOptimize(wrbf(det, seg, 0.4));
}
BENCHMARK(BM_Wrbf)->RangeMultiplier(4)->Range(16, 256);

void BM_GaussianMask(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const ObbBox box = canonicalize_obb(dim / 2.0, dim / 2.0, dim / 3.0, dim / 8.0, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(rotated_gaussian_mask(box, dim, dim));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussianMask)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_MaskToObbs(benchmark::State& state) {
    const ObbBox box = canonicalize_obb(96, 96, 70, 28, 0.5);
    const Grid mask = rotated_gaussian_mask(box, 192, 192);
    for (auto _ : state) benchmark::DoNotOptimize(mask_to_obbs(mask, 0.5, 4.0));
}
BENCHMARK(BM_MaskToObbs);

void BM_EvalPipeline(benchmark::State& state) {
    std::vector<ImageDetections> images;
    for (int i = 0; i < 8; ++i) {
        ImageDetections img;
        img.image_id = "img" + std::to_string(i);
        img.ground_truths = make_boxes(6, false, 100 + i);
        img.predictions = make_boxes(static_cast<size_t>(state.range(0)), true, 200 + i);
        images.push_back(std::move(img));
    }
    for (auto _ : state) benchmark::DoNotOptimize(average_precision(pr_curve(images, 0.5)));
}
BENCHMARK(BM_EvalPipeline)->RangeMultiplier(2)->Range(8, 64);

void BM_SimulateSpeckle(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Grid clean(dim, dim, 5.0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_speckle(clean, 4, 123));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimulateSpeckle)->RangeMultiplier(2)->Range(64, 512)->Complexity();

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
