#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "sketch2manga/color.hpp"
#include "sketch2manga/pipeline.hpp"
#include "sketch2manga/scaling.hpp"
#include "sketch2manga/segmentation.hpp"
#include "sketch2manga/toner.hpp"

using namespace sketch2manga;

namespace {

// Smooth gradients over a few flat blocks, roughly like a flat-shaded drawing.
ColorImage synthetic_illustration(int size) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(0, 255);
  Rgb palette[6];
  for (auto& c : palette) {
    c = {static_cast<std::uint8_t>(dist(rng)), static_cast<std::uint8_t>(dist(rng)),
         static_cast<std::uint8_t>(dist(rng))};
  }
  ColorImage img(size, size);
  const int block = std::max(1, size / 3);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      Rgb c = palette[(x / block + 2 * (y / block)) % 6];
      const int shade = (x + y) * 24 / (2 * size);
      c.r = static_cast<std::uint8_t>(std::max(0, c.r - shade));
      c.g = static_cast<std::uint8_t>(std::max(0, c.g - shade));
      img.set(x, y, c);
    }
  }
  return img;
}

void BM_KMeans(benchmark::State& state) {
  const ColorImage img = synthetic_illustration(static_cast<int>(state.range(0)));
  KMeansOptions options;
  for (auto _ : state) benchmark::DoNotOptimize(kmeans_colors(img, options));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.pixel_count()));
}
BENCHMARK(BM_KMeans)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const IntensityMap in = to_intensity(synthetic_illustration(512));
  PatternSpec spec;
  spec.family = static_cast<PatternFamily>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(in, spec, threads));
  state.SetLabel(std::string(to_string(spec.family)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.pixel_count()));
}
BENCHMARK(BM_Synthesize)
    ->ArgsProduct({{0, 1, 2, 3}, {1, 4}})
    ->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_AdaptiveScale(benchmark::State& state) {
  const ColorImage img = synthetic_illustration(512);
  const IntensityMap rough = synthesize(to_intensity(img), PatternSpec{});
  const LabelMap regions = split_connected(kmeans_colors(img, KMeansOptions{}).clusters);
  const auto stats = region_stats(regions, rough, &img);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(adaptive_scale(img, rough, regions, stats, {}, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.pixel_count()));
}
BENCHMARK(BM_AdaptiveScale)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ProcessIllustration(benchmark::State& state) {
  const ColorImage img = synthetic_illustration(static_cast<int>(state.range(0)));
  PipelineConfig config;
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(process_illustration(img, config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.pixel_count()));
}
BENCHMARK(BM_ProcessIllustration)
    ->ArgsProduct({{64, 512}, {1, 4}})
    ->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
