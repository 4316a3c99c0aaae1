#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logicmine/complexity.hpp"
#include "logicmine/signal_ingest.hpp"

namespace logicmine {

/// Plain "key = value" file. '#' starts a comment; keys are case-sensitive;
/// a repeated key keeps its last value.
class KeyValueConfig {
 public:
  /// Throws std::invalid_argument naming the line of a malformed entry.
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Every tunable of the pipeline with its default.
struct PipelineConfig {
  // ingest
  ingest::Schema schema{};
  ingest::PeakOptions peaks{};
  std::vector<ingest::ThresholdBand> thresholds = ingest::threshold_sweep();

  // synthesis
  std::size_t samples_per_state = 64;
  double peak_amplitude_mv = 100.0;
  double noise_amplitude_mv = 0.0;

  // cellular automaton
  std::size_t width = 500;
  std::size_t steps = 500;
  double p = 0.5;
  std::vector<std::uint64_t> seeds{0};
  int png_level = png::kDeflateLevel;
  complexity::ClassifierOptions classifier{};

  // reporting
  std::size_t top_k = 16;
  std::filesystem::path output_dir = "out";

  /// Overrides fields from a config file. Recognised keys: units,
  /// sync_units, sync_amplitude, sample_period, baseline, min_peak_width,
  /// thresholds, samples_per_state, peak_amplitude, noise_amplitude, width,
  /// steps, p, seeds, png_level, max_period, lz_floor, activity_floor, top_k,
  /// output_dir. Throws std::invalid_argument on unknown keys or bad values.
  void apply(const KeyValueConfig& file);

  /// Throws std::invalid_argument unless width >= 5, thresholds are positive
  /// and strictly ascending, seeds are non-empty, 0 <= p <= 1 and png_level
  /// lies in 0..9.
  void validate() const;
};

/// Comma-separated lists as used on the command line and in config files.
std::vector<double> parse_number_list(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace logicmine
