#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketch2manga/scaling.hpp"
#include "sketch2manga/toner.hpp"

namespace sketch2manga {

enum class InputKind { kIllustration, kSketch };

std::string_view to_string(InputKind kind) noexcept;
InputKind parse_input_kind(std::string_view name);

struct PipelineConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_path;
  /// Built-in halftoner pattern, used when no generator command is set.
  PatternSpec pattern;
  /// External generator template with {in} and {out} placeholders.
  std::optional<std::string> generator_command;
  int kmeans_k = 8;
  int kmeans_iters = 50;
  int kmeans_attempts = 3;
  std::uint64_t seed = 1;
  ScalingParams scaling;
  bool dump_intermediates = false;
  /// Where intermediates go; defaults to "<output stem>.intermediates" next to
  /// the output.
  std::optional<std::filesystem::path> dump_dir;
  InputKind input_kind = InputKind::kIllustration;
  /// External colorizer template, required for sketch input.
  std::optional<std::string> colorizer_command;
  /// Worker threads for per-pixel stages; 0 uses hardware concurrency.
  std::size_t threads = 1;
};

/// One `key = value` line from a config file.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses the flat key/value format: one `key = value` per line, `#` starts a
/// comment, values may be double-quoted. Throws ConfigError on syntax errors
/// and duplicate keys.
std::vector<ConfigEntry> parse_config_text(std::string_view text);
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

/// Every key accepted by apply_config_value(), in documentation order.
const std::vector<std::string_view>& config_keys();

/// Sets one field from its textual form. Keys use snake_case; dashes are
/// accepted too. Throws ConfigError for unknown keys and malformed values.
void apply_config_value(PipelineConfig& config, std::string_view key,
                        std::string_view value);

/// Cross-field and range checks. Throws ConfigError with an actionable message.
void validate(const PipelineConfig& config);

/// Defaults, then file entries, then flag entries (flags win), then
/// validate(). Pattern options combined with an external generator are
/// rejected as conflicting.
PipelineConfig resolve_config(const std::vector<ConfigEntry>& file_entries,
                              const std::vector<ConfigEntry>& flag_entries);

}  // namespace sketch2manga
