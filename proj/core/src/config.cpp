#include "sketch2manga/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "sketch2manga/error.hpp"
#include "sketch2manga/external_generator.hpp"

namespace sketch2manga {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) +
                      "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) +
                    "'");
}

const std::set<std::string_view>& pattern_keys() {
  static const std::set<std::string_view> keys{"pattern",     "frequency",   "angle",
                                               "bayer_order", "black_point", "white_point"};
  return keys;
}

}  // namespace

std::string_view to_string(InputKind kind) noexcept {
  return kind == InputKind::kIllustration ? "illustration" : "sketch";
}

InputKind parse_input_kind(std::string_view name) {
  if (name == "illustration") return InputKind::kIllustration;
  if (name == "sketch") return InputKind::kSketch;
  throw ConfigError("unknown input kind '" + std::string(name) +
                    "' (expected illustration or sketch)");
}

std::vector<ConfigEntry> parse_config_text(std::string_view text) {
  std::vector<ConfigEntry> entries;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    ConfigEntry entry;
    entry.key = normalize_key(line.substr(0, eq));
    entry.line = line_no;
    std::string_view value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      if (close == std::string_view::npos) {
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated string");
      }
      const std::string_view rest = trim(value.substr(close + 1));
      if (!rest.empty() && rest.front() != '#') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unexpected text after closing quote");
      }
      value = value.substr(1, close - 1);
    } else {
      const auto hash = value.find('#');
      if (hash != std::string_view::npos) value = trim(value.substr(0, hash));
    }
    entry.value = std::string(value);

    if (entry.key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(entry.key).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                        entry.key + "'");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_text(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "input",           "output",          "generator",       "pattern",
      "frequency",       "angle",           "bayer_order",     "black_point",
      "white_point",     "kmeans_k",        "kmeans_iters",    "kmeans_attempts",
      "seed",            "w_low",           "w_high",          "channel",
      "match_hist",      "low_sat_fallback", "min_region_pixels", "dump_intermediates",
      "dump_dir",        "input_kind",      "colorizer",       "threads"};
  return keys;
}

void apply_config_value(PipelineConfig& config, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  if (key == "input") {
    config.input_path = std::string(value);
  } else if (key == "output") {
    config.output_path = std::string(value);
  } else if (key == "generator") {
    if (value == "builtin") {
      config.generator_command.reset();
    } else {
      config.generator_command = std::string(value);
    }
  } else if (key == "pattern") {
    config.pattern.family = parse_pattern_family(value);
  } else if (key == "frequency") {
    config.pattern.frequency = parse_double(key, value);
  } else if (key == "angle") {
    config.pattern.angle = parse_double(key, value);
  } else if (key == "bayer_order") {
    config.pattern.bayer_order = parse_integer<int>(key, value);
  } else if (key == "black_point") {
    config.pattern.black_point = parse_double(key, value);
  } else if (key == "white_point") {
    config.pattern.white_point = parse_double(key, value);
  } else if (key == "kmeans_k") {
    config.kmeans_k = parse_integer<int>(key, value);
  } else if (key == "kmeans_iters") {
    config.kmeans_iters = parse_integer<int>(key, value);
  } else if (key == "kmeans_attempts") {
    config.kmeans_attempts = parse_integer<int>(key, value);
  } else if (key == "seed") {
    config.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "w_low") {
    config.scaling.w_low = parse_double(key, value);
  } else if (key == "w_high") {
    config.scaling.w_high = parse_double(key, value);
  } else if (key == "channel") {
    config.scaling.channel = parse_scale_channel(value);
  } else if (key == "match_hist" || key == "histogram_match") {
    config.scaling.histogram_match = parse_bool(key, value);
  } else if (key == "low_sat_fallback") {
    config.scaling.low_sat_fallback = parse_double(key, value);
  } else if (key == "min_region_pixels") {
    config.scaling.min_region_pixels = parse_integer<std::size_t>(key, value);
  } else if (key == "dump_intermediates") {
    config.dump_intermediates = parse_bool(key, value);
  } else if (key == "dump_dir") {
    config.dump_dir = std::filesystem::path(std::string(value));
  } else if (key == "input_kind") {
    config.input_kind = parse_input_kind(value);
  } else if (key == "colorizer") {
    config.colorizer_command = std::string(value);
  } else if (key == "threads") {
    config.threads = parse_integer<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void validate(const PipelineConfig& config) {
  if (config.kmeans_k < 1) {
    throw ConfigError("kmeans_k must be >= 1 (got " + std::to_string(config.kmeans_k) + ")");
  }
  if (config.kmeans_iters < 1) {
    throw ConfigError("kmeans_iters must be >= 1 (got " + std::to_string(config.kmeans_iters) +
                      ")");
  }
  if (config.kmeans_attempts < 1) {
    throw ConfigError("kmeans_attempts must be >= 1 (got " +
                      std::to_string(config.kmeans_attempts) + ")");
  }
  validate(config.scaling);
  if (config.generator_command) {
    validate_command_template(*config.generator_command);
  } else {
    validate(config.pattern);
  }
  if (config.input_kind == InputKind::kSketch && !config.colorizer_command) {
    throw ConfigError(
        "input_kind = sketch requires a colorizer command (no colorization model is bundled)");
  }
  if (config.colorizer_command) validate_command_template(*config.colorizer_command);
}

PipelineConfig resolve_config(const std::vector<ConfigEntry>& file_entries,
                              const std::vector<ConfigEntry>& flag_entries) {
  PipelineConfig config;
  bool pattern_given = false;
  for (const auto* entries : {&file_entries, &flag_entries}) {
    for (const auto& e : *entries) {
      apply_config_value(config, e.key, e.value);
      pattern_given = pattern_given || pattern_keys().contains(normalize_key(e.key));
    }
  }
  if (config.generator_command && pattern_given) {
    throw ConfigError(
        "pattern options (pattern, frequency, angle, bayer_order, black_point, white_point) "
        "only apply to the builtin generator, but an external generator was selected");
  }
  validate(config);
  return config;
}

}  // namespace sketch2manga
