#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketch2manga/config.hpp"
#include "sketch2manga/image.hpp"
#include "sketch2manga/segmentation.hpp"

namespace sketch2manga {

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

/// Everything a single pipeline run produces, in stage order.
struct PipelineArtifacts {
  ColorImage illustration;
  IntensityMap intensity;
  IntensityMap rough;
  LabelMap clusters;
  LabelMap regions;
  std::vector<RegionStats> stats;
  ColorImage scaled;
  IntensityMap final_manga;
};

struct RunReport {
  std::filesystem::path input_path;
  std::filesystem::path output_path;
  int width = 0;
  int height = 0;
  std::vector<StageTiming> stages;
  std::size_t region_count = 0;
  /// FNV-1a 64 over the final manga's 8-bit pixels.
  std::uint64_t checksum = 0;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;
/// Checksum of an intensity map as it is written to disk.
std::uint64_t raster_checksum(const IntensityMap& map);
std::string checksum_hex(std::uint64_t checksum);

/// Runs intensity extraction through final composition on an in-memory
/// illustration. Stage failures are rethrown as StageError.
PipelineArtifacts process_illustration(const ColorImage& illustration,
                                       const PipelineConfig& config,
                                       std::vector<StageTiming>* timings = nullptr);

/// Loads config.input_path (colorizing it first for sketch input), processes
/// it and writes config.output_path. Throws StageError.
RunReport run_pipeline(const PipelineConfig& config);

/// Processes every *.png in config.input_path (a directory) into
/// config.output_path (a directory), in lexicographic order.
std::vector<RunReport> run_batch(const PipelineConfig& config);

/// Human-readable multi-line report.
std::string format_report(const RunReport& report);

}  // namespace sketch2manga
