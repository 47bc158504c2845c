#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>

#include "sketch2manga/error.hpp"
#include "sketch2manga/pipeline.hpp"

namespace sketch2manga::cli {
namespace {

// Flag name -> config key. Every value flag is kept as text and fed through
// the same path as config file entries.
const std::vector<std::pair<std::string, std::string>>& value_flags() {
  static const std::vector<std::pair<std::string, std::string>> flags{
      {"--input", "input"},
      {"--output", "output"},
      {"--generator", "generator"},
      {"--pattern", "pattern"},
      {"--frequency", "frequency"},
      {"--angle", "angle"},
      {"--bayer-order", "bayer_order"},
      {"--black-point", "black_point"},
      {"--white-point", "white_point"},
      {"--kmeans-k", "kmeans_k"},
      {"--kmeans-iters", "kmeans_iters"},
      {"--kmeans-attempts", "kmeans_attempts"},
      {"--seed", "seed"},
      {"--w-low", "w_low"},
      {"--w-high", "w_high"},
      {"--channel", "channel"},
      {"--low-sat-fallback", "low_sat_fallback"},
      {"--min-region-pixels", "min_region_pixels"},
      {"--dump-dir", "dump_dir"},
      {"--input-kind", "input_kind"},
      {"--colorizer", "colorizer"},
      {"--threads", "threads"},
  };
  return flags;
}

struct RunOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
  bool match_hist = false;
  bool dump_intermediates = false;
};

void add_run_options(CLI::App& app, RunOptions& opts) {
  app.add_option("--config", opts.config_file, "Flat key = value config file");
  for (const auto& [flag, key] : value_flags()) {
    app.add_option(flag, opts.values[key]);
  }
  app.get_option("--input")->description("Input PNG, or a directory of PNGs for batch mode");
  app.get_option("--output")->description("Output PNG, or a directory in batch mode");
  app.get_option("--generator")
      ->description("'builtin' or an external command template with {in} and {out}");
  app.get_option("--pattern")->description("dot | line | bayer | threshold");
  app.get_option("--channel")->description("saturation | lightness");
  app.get_option("--frequency")->description("Screen frequency in cycles/pixel, (0, 0.5]");
  app.get_option("--angle")->description("Screen angle in degrees, [0, 180)");
  app.get_option("--bayer-order")->description("Dither matrix size, power of two in [2, 256]");
  app.get_option("--black-point")->description("Intensities at or below this stay solid black");
  app.get_option("--white-point")->description("Intensities at or above this stay paper white");
  app.get_option("--kmeans-k")->description("Color clusters");
  app.get_option("--kmeans-iters")->description("Lloyd iteration cap per attempt");
  app.get_option("--kmeans-attempts")->description("Seeded restarts, lowest SSE wins");
  app.get_option("--seed")->description("RNG seed for k-means");
  app.get_option("--w-low")->description("Downward scaling weight");
  app.get_option("--w-high")->description("Upward scaling weight");
  app.get_option("--low-sat-fallback")
      ->description("Regions with mean saturation below this scale value instead");
  app.get_option("--min-region-pixels")->description("Smaller regions pass through unscaled");
  app.get_option("--dump-dir")->description("Directory for --dump-intermediates");
  app.get_option("--input-kind")->description("illustration | sketch");
  app.get_option("--colorizer")->description("Command template that colors a sketch input");
  app.get_option("--threads")->description("Worker threads, 0 = all cores");
  app.add_flag("--match-hist", opts.match_hist, "Match the final histogram to the rough image");
  app.add_flag("--dump-intermediates", opts.dump_intermediates,
               "Write intensity/rough/labels/scaled PNGs next to the output");
}

PipelineConfig to_config(const CLI::App& app, const RunOptions& opts) {
  std::vector<ConfigEntry> file_entries;
  if (!opts.config_file.empty()) file_entries = read_config_file(opts.config_file);

  std::vector<ConfigEntry> flag_entries;
  for (const auto& [flag, key] : value_flags()) {
    if (app.count(flag) > 0) flag_entries.push_back({key, opts.values.at(key), 0});
  }
  if (opts.match_hist) flag_entries.push_back({"match_hist", "true", 0});
  if (opts.dump_intermediates) flag_entries.push_back({"dump_intermediates", "true", 0});
  return resolve_config(file_entries, flag_entries);
}

}  // namespace

PipelineConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"sketch2manga run"};
  RunOptions opts;
  add_run_options(app, opts);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  return to_config(app, opts);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turns color illustrations into screentoned manga images."};
  app.set_version_flag("--version", "sketch2manga 0.1.0");
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run the screening pipeline on one image or a directory");
  RunOptions opts;
  add_run_options(*run, opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "sketch2manga 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'sketch2manga run --help' for usage\n";
    return kExitConfigError;
  }

  PipelineConfig config;
  try {
    config = to_config(*run, opts);
    if (config.input_path.empty()) throw ConfigError("--input is required");
    if (config.output_path.empty()) throw ConfigError("--output is required");
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (std::filesystem::is_directory(config.input_path)) {
      for (const auto& report : run_batch(config)) out << format_report(report);
    } else {
      out << format_report(run_pipeline(config));
    }
  } catch (const StageError& e) {
    err << "stage failed: " << e.what() << "\n";
    return kExitStageFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitOk;
}

}  // namespace sketch2manga::cli
