#include "sketch2manga/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"

namespace sketch2manga {

LabelMap::LabelMap(int width, int height, std::vector<std::int32_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  if (width < 1 || height < 1 ||
      labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidArgument("label buffer does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  std::int32_t max_label = -1;
  for (auto l : labels_) {
    if (l < 0) throw InvalidArgument("negative label " + std::to_string(l));
    max_label = std::max(max_label, l);
  }
  std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
  for (auto l : labels_) seen[static_cast<std::size_t>(l)] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("labels are not dense in [0, " + std::to_string(max_label + 1) + ")");
  }
  count_ = seen.size();
}

namespace {

using Point = std::array<double, 3>;

// Distinct colors of an image with their multiplicities. Lloyd iterations on
// this weighted set reproduce the per-pixel result exactly: equal colors always
// share an assignment and centroid sums are kept in integers.
struct ColorSet {
  std::vector<std::uint32_t> packed;
  std::vector<Point> points;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint32_t> pixel_to_point;
};

std::uint32_t pack(Rgb c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | std::uint32_t{c.b};
}

ColorSet collect_colors(const ColorImage& img) {
  ColorSet set;
  std::vector<std::uint32_t> all(img.pixel_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = pack(img.pixel(i));
  set.packed = all;
  std::sort(set.packed.begin(), set.packed.end());
  set.packed.erase(std::unique(set.packed.begin(), set.packed.end()), set.packed.end());

  set.counts.assign(set.packed.size(), 0);
  set.pixel_to_point.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto it = std::lower_bound(set.packed.begin(), set.packed.end(), all[i]);
    const auto idx = static_cast<std::uint32_t>(it - set.packed.begin());
    set.pixel_to_point[i] = idx;
    ++set.counts[idx];
  }
  set.points.reserve(set.packed.size());
  for (auto p : set.packed) {
    set.points.push_back({static_cast<double>((p >> 16) & 0xFF),
                          static_cast<double>((p >> 8) & 0xFF), static_cast<double>(p & 0xFF)});
  }
  return set;
}

double squared_distance(const Point& a, const Point& b) {
  const double dr = a[0] - b[0];
  const double dg = a[1] - b[1];
  const double db = a[2] - b[2];
  return dr * dr + dg * dg + db * db;
}

// Uniform double in [0, 1) from the raw engine output; std distributions are
// not portable across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_weighted(const std::vector<double>& weights, double total,
                            std::mt19937_64& rng) {
  const double target = uniform01(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

std::vector<Point> seed_plus_plus(const ColorSet& set, int k, std::mt19937_64& rng) {
  const std::size_t n = set.points.size();
  std::vector<double> weights(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = static_cast<double>(set.counts[i]);
    total += weights[i];
  }

  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(set.points[sample_weighted(weights, total, rng)]);

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(set.points[i], centers.back()));
      weights[i] = nearest[i] * static_cast<double>(set.counts[i]);
      total += weights[i];
    }
    if (total <= 0.0) {
      // Fewer distinct colors than clusters; the duplicates stay empty.
      centers.push_back(centers.front());
      continue;
    }
    centers.push_back(set.points[sample_weighted(weights, total, rng)]);
  }
  return centers;
}

struct Run {
  std::vector<std::uint32_t> assignment;
  double sse = 0.0;
  int iterations = 0;
};

bool assign(const ColorSet& set, const std::vector<Point>& centers,
            std::vector<std::uint32_t>& assignment) {
  bool changed = false;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    std::uint32_t best = 0;
    double best_d = squared_distance(set.points[i], centers[0]);
    for (std::uint32_t c = 1; c < centers.size(); ++c) {
      const double d = squared_distance(set.points[i], centers[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    if (assignment[i] != best) {
      assignment[i] = best;
      changed = true;
    }
  }
  return changed;
}

// Recomputes centroids; returns per-cluster pixel counts.
std::vector<std::uint64_t> update_centers(const ColorSet& set,
                                          const std::vector<std::uint32_t>& assignment,
                                          std::vector<Point>& centers) {
  const std::size_t k = centers.size();
  std::vector<std::array<std::uint64_t, 3>> sums(k, {0, 0, 0});
  std::vector<std::uint64_t> sizes(k, 0);
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const auto c = assignment[i];
    const auto p = set.packed[i];
    const auto w = set.counts[i];
    sums[c][0] += ((p >> 16) & 0xFF) * w;
    sums[c][1] += ((p >> 8) & 0xFF) * w;
    sums[c][2] += (p & 0xFF) * w;
    sizes[c] += w;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] == 0) continue;
    for (int ch = 0; ch < 3; ++ch) {
      centers[c][ch] = static_cast<double>(sums[c][ch]) / static_cast<double>(sizes[c]);
    }
  }
  return sizes;
}

// Moves each empty cluster onto the point currently farthest from its center.
void reseed_empty(const ColorSet& set, const std::vector<std::uint64_t>& sizes,
                  std::vector<std::uint32_t>& assignment, std::vector<Point>& centers) {
  std::vector<double> dist;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    if (sizes[c] != 0) continue;
    if (dist.empty()) {
      dist.resize(set.points.size());
      for (std::size_t i = 0; i < set.points.size(); ++i) {
        dist[i] = squared_distance(set.points[i], centers[assignment[i]]);
      }
    }
    std::size_t far = 0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    if (dist[far] <= 0.0) return;
    centers[c] = set.points[far];
    assignment[far] = static_cast<std::uint32_t>(c);
    dist[far] = 0.0;
  }
}

double weighted_sse(const ColorSet& set, const std::vector<std::uint32_t>& assignment,
                    std::size_t k) {
  std::vector<Point> means(k, Point{0, 0, 0});
  update_centers(set, assignment, means);
  double sse = 0.0;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    sse += static_cast<double>(set.counts[i]) *
           squared_distance(set.points[i], means[assignment[i]]);
  }
  return sse;
}

Run lloyd(const ColorSet& set, const KMeansOptions& options, std::mt19937_64& rng) {
  std::vector<Point> centers = seed_plus_plus(set, options.k, rng);
  Run run;
  run.assignment.assign(set.points.size(), std::numeric_limits<std::uint32_t>::max());
  assign(set, centers, run.assignment);
  while (run.iterations < options.max_iters) {
    const auto sizes = update_centers(set, run.assignment, centers);
    reseed_empty(set, sizes, run.assignment, centers);
    ++run.iterations;
    if (!assign(set, centers, run.assignment)) break;
  }
  run.sse = weighted_sse(set, run.assignment, centers.size());
  return run;
}

}  // namespace

KMeansResult kmeans_colors(const ColorImage& img, const KMeansOptions& options) {
  if (options.k < 1) {
    throw InvalidArgument("k-means cluster count must be >= 1, got " +
                          std::to_string(options.k));
  }
  if (options.max_iters < 0) throw InvalidArgument("k-means max_iters must be >= 0");
  if (options.attempts < 1) throw InvalidArgument("k-means attempts must be >= 1");
  if (img.empty()) throw InvalidArgument("k-means on an image with zero pixels");

  const ColorSet set = collect_colors(img);
  Run best;
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    std::mt19937_64 rng(options.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt));
    Run run = lloyd(set, options, rng);
    if (attempt == 0 || run.sse < best.sse) best = std::move(run);
  }

  // Renumber by first occurrence in raster order, dropping empty clusters.
  const std::size_t k = static_cast<std::size_t>(options.k);
  std::vector<std::int32_t> remap(k, -1);
  std::vector<std::int32_t> labels(img.pixel_count());
  std::int32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto cluster = best.assignment[set.pixel_to_point[i]];
    if (remap[cluster] < 0) remap[cluster] = next++;
    labels[i] = remap[cluster];
  }

  KMeansResult result;
  result.clusters = LabelMap(img.width(), img.height(), std::move(labels));
  result.sse = best.sse;
  result.iterations = best.iterations;

  std::vector<std::uint32_t> renumbered(best.assignment.size());
  for (std::size_t i = 0; i < renumbered.size(); ++i) {
    renumbered[i] = static_cast<std::uint32_t>(remap[best.assignment[i]]);
  }
  result.centers.assign(static_cast<std::size_t>(next), Point{0, 0, 0});
  update_centers(set, renumbered, result.centers);
  return result;
}

LabelMap split_connected(const LabelMap& clusters) {
  const int w = clusters.width();
  const int h = clusters.height();
  const std::size_t n = clusters.pixel_count();
  std::vector<std::int32_t> out(n, -1);
  std::vector<std::size_t> stack;
  std::int32_t next = 0;

  for (std::size_t start = 0; start < n; ++start) {
    if (out[start] >= 0) continue;
    const std::int32_t cluster = clusters[start];
    out[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(i % static_cast<std::size_t>(w));
      const int y = static_cast<int>(i / static_cast<std::size_t>(w));
      auto visit = [&](std::size_t j) {
        if (out[j] < 0 && clusters[j] == cluster) {
          out[j] = next;
          stack.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < w) visit(i + 1);
      if (y > 0) visit(i - static_cast<std::size_t>(w));
      if (y + 1 < h) visit(i + static_cast<std::size_t>(w));
    }
    ++next;
  }
  return LabelMap(w, h, std::move(out));
}

std::vector<RegionStats> region_stats(const LabelMap& regions, const IntensityMap& rough,
                                      const ColorImage* source) {
  if (!same_dimensions(regions, rough)) {
    throw InvalidArgument("region map is " + std::to_string(regions.width()) + "x" +
                          std::to_string(regions.height()) + " but rough image is " +
                          std::to_string(rough.width()) + "x" +
                          std::to_string(rough.height()));
  }
  if (source != nullptr && !same_dimensions(regions, *source)) {
    throw InvalidArgument("region map and source illustration differ in size");
  }

  const std::size_t count = regions.count();
  std::vector<RegionStats> stats(count);
  std::vector<double> sums(count, 0.0);
  std::vector<std::array<std::uint64_t, 3>> color_sums(count, {0, 0, 0});
  for (std::size_t r = 0; r < count; ++r) {
    stats[r].region_id = static_cast<std::int32_t>(r);
    stats[r].min_ir = std::numeric_limits<double>::infinity();
    stats[r].max_ir = -std::numeric_limits<double>::infinity();
  }

  for (std::size_t i = 0; i < regions.pixel_count(); ++i) {
    auto& s = stats[static_cast<std::size_t>(regions[i])];
    const double v = rough[i];
    ++s.pixel_count;
    sums[static_cast<std::size_t>(regions[i])] += v;
    s.min_ir = std::min(s.min_ir, v);
    s.max_ir = std::max(s.max_ir, v);
    if (source != nullptr) {
      const Rgb c = source->pixel(i);
      auto& cs = color_sums[static_cast<std::size_t>(regions[i])];
      cs[0] += c.r;
      cs[1] += c.g;
      cs[2] += c.b;
    }
  }

  std::vector<double> means(count);
  for (std::size_t r = 0; r < count; ++r) {
    const double n = static_cast<double>(stats[r].pixel_count);
    means[r] = sums[r] / n;
    if (source != nullptr) {
      for (int ch = 0; ch < 3; ++ch) {
        stats[r].mean_color[ch] = static_cast<double>(color_sums[r][ch]) / n;
      }
    }
  }

  std::vector<double> squared(count, 0.0);
  for (std::size_t i = 0; i < regions.pixel_count(); ++i) {
    const auto r = static_cast<std::size_t>(regions[i]);
    const double d = rough[i] - means[r];
    squared[r] += d * d;
  }
  for (std::size_t r = 0; r < count; ++r) {
    const double n = static_cast<double>(stats[r].pixel_count);
    // Values in [0, 1] bound the population deviation by 0.5.
    stats[r].sigma = std::min(0.5, std::sqrt(squared[r] / n));
  }
  return stats;
}

double partition_sse(const ColorImage& img, const LabelMap& labels) {
  if (!same_dimensions(img, labels)) {
    throw InvalidArgument("image and labeling differ in size");
  }
  const std::size_t k = labels.count();
  std::vector<std::array<double, 3>> sums(k, {0, 0, 0});
  std::vector<double> sizes(k, 0.0);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const Rgb c = img.pixel(i);
    auto& s = sums[static_cast<std::size_t>(labels[i])];
    s[0] += c.r;
    s[1] += c.g;
    s[2] += c.b;
    sizes[static_cast<std::size_t>(labels[i])] += 1.0;
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    const Rgb c = img.pixel(i);
    const Point p{static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
    const Point m{sums[l][0] / sizes[l], sums[l][1] / sizes[l], sums[l][2] / sizes[l]};
    sse += squared_distance(p, m);
  }
  return sse;
}

ColorImage render_labels(const LabelMap& labels) {
  ColorImage out(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.pixel_count(); ++i) {
    const double id = static_cast<double>(labels[i]);
    // Golden-angle hue steps keep neighbouring ids visually distinct.
    const Hsv hsv{std::fmod(id * 137.50776405, 360.0),
                  0.45 + 0.4 * std::fmod(id * 0.61803398875, 1.0), 0.95};
    out.set_pixel(i, hsv_to_rgb(hsv));
  }
  return out;
}

}  // namespace sketch2manga
