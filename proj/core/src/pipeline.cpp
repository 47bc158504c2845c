#include "sketch2manga/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <system_error>
#include <utility>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"
#include "sketch2manga/external_generator.hpp"
#include "sketch2manga/png_io.hpp"
#include "sketch2manga/scaling.hpp"
#include "sketch2manga/toner.hpp"

namespace sketch2manga {
namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (auto b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t raster_checksum(const IntensityMap& map) {
  std::vector<std::uint8_t> bytes(map.pixel_count());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize(map[i]);
  return fnv1a64(bytes);
}

std::string checksum_hex(std::uint64_t checksum) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

namespace {

class StageRunner {
 public:
  explicit StageRunner(std::vector<StageTiming>* timings) : timings_(timings) {}

  template <typename F>
  auto operator()(const char* stage, F&& body) -> decltype(body()) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        record(stage, start);
      } else {
        auto result = body();
        record(stage, start);
        return result;
      }
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(stage, e.what());
    }
  }

 private:
  void record(const char* stage, std::chrono::steady_clock::time_point start) {
    if (timings_ == nullptr) return;
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    timings_->push_back({stage, elapsed.count()});
  }

  std::vector<StageTiming>* timings_;
};

fs::path default_dump_dir(const PipelineConfig& config) {
  if (config.dump_dir) return *config.dump_dir;
  return config.output_path.parent_path() /
         (config.output_path.stem().string() + ".intermediates");
}

// Fixed intermediate names; test harnesses rely on them.
void dump_intermediate(const fs::path* dir, const char* name, const auto& image) {
  if (dir == nullptr) return;
  save_image(image, *dir / name);
}

PipelineArtifacts run_stages(const ColorImage& illustration, const PipelineConfig& config,
                             std::vector<StageTiming>* timings, const fs::path* dump_dir) {
  StageRunner stage(timings);
  const std::size_t threads = config.threads;
  PipelineArtifacts a;
  a.illustration = illustration;

  a.intensity = stage("intensity", [&] { return to_intensity(a.illustration, threads); });
  dump_intermediate(dump_dir, "intensity.png", a.intensity);

  a.rough = stage("generator", [&] {
    if (config.generator_command) {
      return run_external_generator(a.intensity, *config.generator_command);
    }
    return synthesize(a.intensity, config.pattern, threads);
  });
  dump_intermediate(dump_dir, "rough.png", a.rough);

  a.clusters = stage("kmeans", [&] {
    KMeansOptions options;
    options.k = config.kmeans_k;
    options.seed = config.seed;
    options.max_iters = config.kmeans_iters;
    options.attempts = config.kmeans_attempts;
    return kmeans_colors(a.illustration, options).clusters;
  });
  a.regions = stage("split", [&] { return split_connected(a.clusters); });
  dump_intermediate(dump_dir, "labels.png", render_labels(a.regions));

  a.stats = stage("stats", [&] { return region_stats(a.regions, a.rough, &a.illustration); });
  a.scaled = stage("scale", [&] {
    return adaptive_scale(a.illustration, a.rough, a.regions, a.stats, config.scaling, threads);
  });
  if (dump_dir != nullptr) {
    dump_intermediate(dump_dir, "scaled.png", a.scaled);
    const HsvImage hsv = rgb_to_hsv(a.scaled, threads);
    IntensityMap s(hsv.width(), hsv.height());
    IntensityMap v(hsv.width(), hsv.height());
    for (std::size_t i = 0; i < hsv.pixel_count(); ++i) {
      s[i] = hsv[i].s;
      v[i] = hsv[i].v;
    }
    dump_intermediate(dump_dir, "scaled_s.png", s);
    dump_intermediate(dump_dir, "scaled_v.png", v);
  }

  a.final_manga =
      stage("compose", [&] { return compose_final(a.scaled, a.rough, config.scaling, threads); });
  return a;
}

}  // namespace

PipelineArtifacts process_illustration(const ColorImage& illustration,
                                       const PipelineConfig& config,
                                       std::vector<StageTiming>* timings) {
  StageRunner(nullptr)("config", [&] { validate(config); });
  return run_stages(illustration, config, timings, nullptr);
}

RunReport run_pipeline(const PipelineConfig& config) {
  RunReport report;
  report.input_path = config.input_path;
  report.output_path = config.output_path;
  StageRunner stage(&report.stages);

  stage("config", [&] { validate(config); });

  const ColorImage illustration = stage("load", [&] {
    if (config.input_kind == InputKind::kSketch) {
      return run_external_colorizer(config.input_path, *config.colorizer_command);
    }
    return load_image(config.input_path);
  });

  std::optional<fs::path> dump_dir;
  if (config.dump_intermediates) {
    dump_dir = default_dump_dir(config);
    stage("dump", [&] { fs::create_directories(*dump_dir); });
  }

  const PipelineArtifacts artifacts =
      run_stages(illustration, config, &report.stages, dump_dir ? &*dump_dir : nullptr);

  stage("save", [&] {
    try {
      save_image(artifacts.final_manga, config.output_path);
    } catch (...) {
      std::error_code ec;
      fs::remove(config.output_path, ec);
      throw;
    }
  });

  report.width = illustration.width();
  report.height = illustration.height();
  report.region_count = artifacts.regions.count();
  report.checksum = raster_checksum(artifacts.final_manga);
  return report;
}

std::vector<RunReport> run_batch(const PipelineConfig& config) {
  std::vector<fs::path> inputs;
  StageRunner(nullptr)("batch", [&] {
    if (!fs::is_directory(config.input_path)) {
      throw InvalidArgument("'" + config.input_path.string() + "' is not a directory");
    }
    for (const auto& entry : fs::directory_iterator(config.input_path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".png") {
        inputs.push_back(entry.path());
      }
    }
    std::sort(inputs.begin(), inputs.end());
    fs::create_directories(config.output_path);
  });

  std::vector<RunReport> reports;
  reports.reserve(inputs.size());
  for (const auto& input : inputs) {
    PipelineConfig one = config;
    one.input_path = input;
    one.output_path = config.output_path / input.filename();
    if (config.dump_dir) one.dump_dir = *config.dump_dir / input.stem();
    reports.push_back(run_pipeline(one));
  }
  return reports;
}

std::string format_report(const RunReport& report) {
  std::ostringstream out;
  out << "input:    " << report.input_path.string() << "\n"
      << "output:   " << report.output_path.string() << "\n"
      << "size:     " << report.width << "x" << report.height << "\n"
      << "regions:  " << report.region_count << "\n"
      << "checksum: " << checksum_hex(report.checksum) << "\n";
  for (const auto& s : report.stages) {
    char line[96];
    std::snprintf(line, sizeof(line), "  %-10s %10.3f ms\n", s.stage.c_str(), s.milliseconds);
    out << line;
  }
  return out.str();
}

}  // namespace sketch2manga
