#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logicmine/truth_table.hpp"

namespace logicmine::ingest {

inline constexpr std::size_t kDataChannels = 7;
/// A session counts through 16 input states, so the sync line pulses 15 times.
inline constexpr std::size_t kSyncPulses = kInputStates - 1;

class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what, std::size_t row = 0)
      : std::runtime_error(what), row_(row) {}

  /// 1-based line number in the source file, 0 when not tied to a row.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Multi-channel voltage trace in millivolts: 7 data channels plus the sync line.
struct Recording {
  double sample_period = 1.0;  // seconds
  std::array<std::vector<double>, kDataChannels> channels;
  std::vector<double> sync;

  std::size_t length() const noexcept { return sync.size(); }

  /// Throws IngestError unless all 8 sequences share one length >= 16 and
  /// sample_period > 0.
  void validate() const;

  bool operator==(const Recording&) const = default;
};

enum class VoltageUnit { microvolt, millivolt, volt };

/// Accepts "uV", "mV", "V" (case-insensitive).
VoltageUnit parse_unit(std::string_view text);
double millivolts_per(VoltageUnit unit) noexcept;

/// How a CSV file maps onto a Recording.
struct Schema {
  VoltageUnit data_units = VoltageUnit::millivolt;
  VoltageUnit sync_units = VoltageUnit::millivolt;
  /// Declared height of a sync pulse, already in millivolts.
  double sync_amplitude_mv = 1000.0;
  /// Used when the file has no `t` column.
  double sample_period = 1.0;
};

/// Reads a CSV with header `t` (optional), `ch1`..`ch7`, `sync`.
Recording load_recording(const std::filesystem::path& path, const Schema& schema = {});
Recording read_recording(std::istream& in, const Schema& schema = {});

/// Writes millivolt values with a `t` column; the output reads back exactly.
void write_recording(std::ostream& out, const Recording& rec);
void save_recording(const std::filesystem::path& path, const Recording& rec);

/// Samples [start, end) belonging to one input state.
struct StateWindow {
  unsigned state_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  /// Views into the Recording the window was cut from; they dangle once it dies.
  std::array<std::span<const double>, kDataChannels> channel_slices;

  std::size_t size() const noexcept { return end - start; }
};

struct SegmentOptions {
  double sync_threshold_mv = 500.0;

  static SegmentOptions from_schema(const Schema& schema) {
    return SegmentOptions{0.5 * schema.sync_amplitude_mv};
  }
};

/// Indices of rising edges: sync[i] > threshold and sync[i-1] <= threshold.
std::vector<std::size_t> find_sync_pulses(std::span<const double> sync, double threshold_mv);

/// Splits a single-session recording into its 16 state windows.
///
/// Window 0 starts at the first sample; window k >= 1 starts at the k-th sync
/// pulse; the last window runs to the end of the recording.
std::vector<StateWindow> segment_states(const Recording& rec, const SegmentOptions& options = {});

/// Half-width of the symmetric band, in millivolts.
class ThresholdBand {
 public:
  explicit ThresholdBand(double theta_mv);

  double theta() const noexcept { return theta_mv_; }

  auto operator<=>(const ThresholdBand&) const = default;

 private:
  double theta_mv_;
};

/// The 32-step sweep 20, 25, ..., 175 mV.
std::vector<ThresholdBand> threshold_sweep();
/// Inclusive sweep first, first + step, ... <= last (with half-step slack).
std::vector<ThresholdBand> threshold_sweep(double first_mv, double last_mv, double step_mv);

enum class Baseline { median, zero };

struct PeakOptions {
  Baseline baseline = Baseline::median;
  /// Minimum number of out-of-band samples for an excursion to count.
  std::size_t min_width = 1;
};

struct PeakReport {
  std::size_t count = 0;
  /// Absolute sample index of the largest deviation of each peak.
  std::vector<std::size_t> locations;
  /// Largest |v - baseline| over the reported peaks, 0 when there are none.
  double max_excursion = 0.0;
};

double window_baseline(std::span<const double> samples, Baseline baseline);

/// Counts peaks outside the band baseline +/- theta, ignoring polarity.
///
/// A peak starts at the first out-of-band sample and lasts until the trace
/// returns to or crosses the baseline, so a spike that dips back towards the
/// band without reaching the baseline is still one peak. `first_index` is the
/// absolute index of samples[0] and only offsets the reported locations.
PeakReport detect_peaks(std::span<const double> samples, double theta_mv,
                        const PeakOptions& options = {}, std::size_t first_index = 0);

PeakReport detect_peaks(const StateWindow& window, std::size_t channel, ThresholdBand band,
                        const PeakOptions& options = {});

struct SynthesisParams {
  std::array<TruthTable, kDataChannels> tables{};
  double peak_amplitude_mv = 100.0;
  double noise_amplitude_mv = 0.0;
  std::size_t samples_per_state = 64;
  std::uint64_t seed = 0;
  double sync_amplitude_mv = 1000.0;
  double sample_period = 1.0;
};

/// Fixture generator: channel c spikes once in state window k iff bit k of
/// tables[c] is set. Noise is uniform in [-noise, +noise]; spike samples carry
/// exactly +/- peak_amplitude with polarity alternating over (c + k).
Recording synthesize_recording(const SynthesisParams& params);

Recording synthesize_recording(const std::array<TruthTable, kDataChannels>& tables,
                               double peak_amplitude_mv, double noise_amplitude_mv,
                               std::size_t samples_per_state, std::uint64_t seed);

}  // namespace logicmine::ingest
