#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sketch2manga/image.hpp"

namespace sketch2manga {

/// Row-major labels, dense in [0, count).
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(int width, int height, std::vector<std::int32_t> labels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return labels_.size(); }
  /// Number of distinct labels.
  std::size_t count() const noexcept { return count_; }

  std::int32_t at(int x, int y) const noexcept {
    return labels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                   static_cast<std::size_t>(x)];
  }
  std::int32_t operator[](std::size_t i) const noexcept { return labels_[i]; }
  std::span<const std::int32_t> labels() const noexcept { return labels_; }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::size_t count_ = 0;
  std::vector<std::int32_t> labels_;
};

struct KMeansOptions {
  int k = 8;
  std::uint64_t seed = 1;
  int max_iters = 50;
  /// Independent k-means++ restarts; the lowest-SSE run wins.
  int attempts = 3;
};

struct KMeansResult {
  /// Cluster labels renumbered by first occurrence in raster order.
  LabelMap clusters;
  /// Cluster centers in the order of the renumbered labels.
  std::vector<std::array<double, 3>> centers;
  /// Within-cluster sum of squared RGB distances.
  double sse = 0.0;
  int iterations = 0;
};

/// Lloyd's algorithm over RGB triples with k-means++ seeding.
///
/// Deterministic for fixed (img, options). Ties in assignment go to the lowest
/// cluster index. Clusters that empty out are re-seeded from the point
/// farthest from its center. Throws InvalidArgument when k < 1, max_iters < 0,
/// attempts < 1 or the image is empty.
KMeansResult kmeans_colors(const ColorImage& img, const KMeansOptions& options);

/// Splits each cluster into maximal 4-connected components. Labels are
/// assigned in raster order of each component's first pixel.
LabelMap split_connected(const LabelMap& clusters);

struct RegionStats {
  std::int32_t region_id = 0;
  std::size_t pixel_count = 0;
  /// Population standard deviation of the rough image over the region.
  double sigma = 0.0;
  double min_ir = 0.0;
  double max_ir = 0.0;
  /// Mean RGB of the source illustration; zero when no source was given.
  std::array<double, 3> mean_color{};
};

/// Per-region statistics of `rough`, indexed by region id.
/// Throws InvalidArgument on any dimension mismatch.
std::vector<RegionStats> region_stats(const LabelMap& regions,
                                      const IntensityMap& rough,
                                      const ColorImage* source = nullptr);

/// Within-cluster SSE of an arbitrary labeling of `img`'s colors.
double partition_sse(const ColorImage& img, const LabelMap& labels);

/// Debug rendering: one distinct color per label.
ColorImage render_labels(const LabelMap& labels);

}  // namespace sketch2manga
