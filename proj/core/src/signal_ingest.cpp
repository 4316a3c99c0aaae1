#include "logicmine/signal_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "logicmine/random.hpp"

namespace logicmine::ingest {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(pos)));
      break;
    }
    cells.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void append_number(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace

void Recording::validate() const {
  if (!(sample_period > 0.0)) throw IngestError("sample period must be positive");
  for (std::size_t c = 0; c < kDataChannels; ++c) {
    if (channels[c].size() != sync.size()) {
      throw IngestError("channel ch" + std::to_string(c + 1) + " has " +
                        std::to_string(channels[c].size()) + " samples, sync has " +
                        std::to_string(sync.size()));
    }
  }
  if (sync.size() < kInputStates) {
    throw IngestError("recording has " + std::to_string(sync.size()) +
                      " samples, at least 16 are required");
  }
}

VoltageUnit parse_unit(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "uv" || t == "microvolt" || t == "microvolts") return VoltageUnit::microvolt;
  if (t == "mv" || t == "millivolt" || t == "millivolts") return VoltageUnit::millivolt;
  if (t == "v" || t == "volt" || t == "volts") return VoltageUnit::volt;
  throw IngestError("unknown voltage unit '" + std::string(text) + "'");
}

double millivolts_per(VoltageUnit unit) noexcept {
  switch (unit) {
    case VoltageUnit::microvolt: return 1e-3;
    case VoltageUnit::millivolt: return 1.0;
    case VoltageUnit::volt: return 1e3;
  }
  return 1.0;
}

Recording read_recording(std::istream& in, const Schema& schema) {
  std::string line;
  std::size_t row = 0;
  // Header; blank lines before it are tolerated.
  while (std::getline(in, line)) {
    ++row;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw IngestError("empty file: no header row", row);

  const auto header = split_commas(line);
  std::optional<std::size_t> time_col;
  std::optional<std::size_t> sync_col;
  std::array<std::optional<std::size_t>, kDataChannels> data_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = lower(header[i]);
    if (name == "t") {
      time_col = i;
    } else if (name == "sync") {
      sync_col = i;
    } else if (name.size() == 3 && name[0] == 'c' && name[1] == 'h' && name[2] >= '1' &&
               name[2] <= '7') {
      data_cols[static_cast<std::size_t>(name[2] - '1')] = i;
    }
  }
  for (std::size_t c = 0; c < kDataChannels; ++c) {
    if (!data_cols[c]) throw IngestError("missing column ch" + std::to_string(c + 1), row);
  }
  if (!sync_col) throw IngestError("sync channel missing", row);

  const double data_scale = millivolts_per(schema.data_units);
  const double sync_scale = millivolts_per(schema.sync_units);
  Recording rec;
  rec.sample_period = schema.sample_period;
  std::vector<double> times;

  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw IngestError("row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()),
                        row);
    }
    auto cell_value = [&](std::size_t col) {
      const auto v = parse_number(cells[col]);
      if (!v) {
        throw IngestError("row " + std::to_string(row) + ": non-numeric cell '" +
                              std::string(cells[col]) + "' in column " + std::string(header[col]),
                          row);
      }
      return *v;
    };
    for (std::size_t c = 0; c < kDataChannels; ++c) {
      rec.channels[c].push_back(cell_value(*data_cols[c]) * data_scale);
    }
    rec.sync.push_back(cell_value(*sync_col) * sync_scale);
    if (time_col) times.push_back(cell_value(*time_col));
  }

  if (times.size() >= 2) rec.sample_period = times[1] - times[0];
  rec.validate();
  return rec;
}

Recording load_recording(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  try {
    return read_recording(in, schema);
  } catch (const IngestError& e) {
    throw IngestError(path.string() + ": " + e.what(), e.row());
  }
}

void write_recording(std::ostream& out, const Recording& rec) {
  std::string buf = "t,ch1,ch2,ch3,ch4,ch5,ch6,ch7,sync\n";
  for (std::size_t i = 0; i < rec.length(); ++i) {
    append_number(buf, static_cast<double>(i) * rec.sample_period);
    for (const auto& ch : rec.channels) {
      buf.push_back(',');
      append_number(buf, ch[i]);
    }
    buf.push_back(',');
    append_number(buf, rec.sync[i]);
    buf.push_back('\n');
  }
  out << buf;
}

void save_recording(const std::filesystem::path& path, const Recording& rec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write " + path.string());
  write_recording(out, rec);
}

std::vector<std::size_t> find_sync_pulses(std::span<const double> sync, double threshold_mv) {
  std::vector<std::size_t> pulses;
  for (std::size_t i = 1; i < sync.size(); ++i) {
    if (sync[i] > threshold_mv && sync[i - 1] <= threshold_mv) pulses.push_back(i);
  }
  return pulses;
}

std::vector<StateWindow> segment_states(const Recording& rec, const SegmentOptions& options) {
  rec.validate();
  const auto pulses = find_sync_pulses(rec.sync, options.sync_threshold_mv);

  if (pulses.size() < kSyncPulses) {
    std::ostringstream msg;
    msg << "incomplete session: found " << pulses.size() << " of " << kSyncPulses
        << " sync pulses";
    if (!pulses.empty()) {
      // Name the widest stretch without a pulse; a dropped pulse shows up there.
      std::vector<std::size_t> bounds{0};
      bounds.insert(bounds.end(), pulses.begin(), pulses.end());
      bounds.push_back(rec.length());
      std::size_t widest = 0;
      for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
        if (bounds[i + 1] - bounds[i] > bounds[widest + 1] - bounds[widest]) widest = i;
      }
      msg << "; widest gap between samples " << bounds[widest] << " and " << bounds[widest + 1];
    }
    throw IngestError(msg.str());
  }
  if (pulses.size() > kSyncPulses) {
    std::ostringstream msg;
    msg << "extra sync pulses: found " << pulses.size() << " of " << kSyncPulses
        << ", pulse indices";
    for (auto p : pulses) msg << ' ' << p;
    throw IngestError(msg.str());
  }

  std::vector<StateWindow> windows(kInputStates);
  for (unsigned k = 0; k < kInputStates; ++k) {
    auto& w = windows[k];
    w.state_index = k;
    w.start = k == 0 ? 0 : pulses[k - 1];
    w.end = k + 1 < kInputStates ? pulses[k] : rec.length();
    for (std::size_t c = 0; c < kDataChannels; ++c) {
      w.channel_slices[c] = std::span<const double>(rec.channels[c]).subspan(w.start, w.size());
    }
  }
  return windows;
}

ThresholdBand::ThresholdBand(double theta_mv) : theta_mv_(theta_mv) {
  if (!(theta_mv > 0.0) || !std::isfinite(theta_mv)) {
    throw std::invalid_argument("threshold band must be positive");
  }
}

std::vector<ThresholdBand> threshold_sweep() { return threshold_sweep(20.0, 175.0, 5.0); }

std::vector<ThresholdBand> threshold_sweep(double first_mv, double last_mv, double step_mv) {
  if (!(step_mv > 0.0) || last_mv < first_mv) throw std::invalid_argument("invalid threshold sweep");
  std::vector<ThresholdBand> bands;
  for (std::size_t i = 0;; ++i) {
    const double theta = first_mv + static_cast<double>(i) * step_mv;
    if (theta > last_mv + 0.5 * step_mv) break;
    bands.emplace_back(theta);
  }
  return bands;
}

double window_baseline(std::span<const double> samples, Baseline baseline) {
  if (baseline == Baseline::zero || samples.empty()) return 0.0;
  std::vector<double> sorted(samples.begin(), samples.end());
  const auto mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  const double upper = sorted[mid];
  if (sorted.size() % 2 == 1) return upper;
  const double lower_mid =
      *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower_mid + upper);
}

PeakReport detect_peaks(std::span<const double> samples, double theta_mv,
                        const PeakOptions& options, std::size_t first_index) {
  PeakReport report;
  const double baseline = window_baseline(samples, options.baseline);
  const std::size_t min_width = std::max<std::size_t>(options.min_width, 1);

  // One excursion = maximal run of same-sign deviation from the baseline.
  int sign = 0;
  std::size_t beyond = 0;
  std::size_t best_index = 0;
  double best = 0.0;
  auto close = [&] {
    if (sign != 0 && beyond >= min_width) {
      ++report.count;
      report.locations.push_back(first_index + best_index);
      report.max_excursion = std::max(report.max_excursion, best);
    }
    sign = 0;
    beyond = 0;
    best = 0.0;
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double dev = samples[i] - baseline;
    const int s = dev > 0.0 ? 1 : (dev < 0.0 ? -1 : 0);
    if (s != sign) close();
    sign = s;
    if (s == 0) continue;
    const double mag = std::abs(dev);
    if (mag > theta_mv) ++beyond;
    if (mag > best) {
      best = mag;
      best_index = i;
    }
  }
  close();
  return report;
}

PeakReport detect_peaks(const StateWindow& window, std::size_t channel, ThresholdBand band,
                        const PeakOptions& options) {
  if (channel >= kDataChannels) throw std::out_of_range("channel index out of range");
  return detect_peaks(window.channel_slices[channel], band.theta(), options, window.start);
}

Recording synthesize_recording(const SynthesisParams& p) {
  if (!(p.noise_amplitude_mv >= 0.0) || !(p.peak_amplitude_mv > p.noise_amplitude_mv)) {
    throw std::invalid_argument("synthesis requires peak_amplitude > noise_amplitude >= 0");
  }
  if (p.samples_per_state < 4) throw std::invalid_argument("samples_per_state must be at least 4");
  if (!(p.sync_amplitude_mv > 0.0)) throw std::invalid_argument("sync amplitude must be positive");

  const std::size_t n = kInputStates * p.samples_per_state;
  Recording rec;
  rec.sample_period = p.sample_period;
  rec.sync.assign(n, 0.0);
  for (std::size_t k = 1; k < kInputStates; ++k) rec.sync[k * p.samples_per_state] = p.sync_amplitude_mv;

  Engine engine(p.seed);
  for (std::size_t c = 0; c < kDataChannels; ++c) {
    auto& ch = rec.channels[c];
    ch.resize(n);
    for (auto& v : ch) {
      v = p.noise_amplitude_mv > 0.0 ? uniform(engine, -p.noise_amplitude_mv, p.noise_amplitude_mv)
                                     : 0.0;
    }
    for (unsigned k = 0; k < kInputStates; ++k) {
      if (!p.tables[c].bit(k)) continue;
      const double polarity = (c + k) % 2 == 0 ? 1.0 : -1.0;
      ch[k * p.samples_per_state + p.samples_per_state / 2] = polarity * p.peak_amplitude_mv;
    }
  }
  return rec;
}

Recording synthesize_recording(const std::array<TruthTable, kDataChannels>& tables,
                               double peak_amplitude_mv, double noise_amplitude_mv,
                               std::size_t samples_per_state, std::uint64_t seed) {
  SynthesisParams p;
  p.tables = tables;
  p.peak_amplitude_mv = peak_amplitude_mv;
  p.noise_amplitude_mv = noise_amplitude_mv;
  p.samples_per_state = samples_per_state;
  p.seed = seed;
  return synthesize_recording(p);
}

}  // namespace logicmine::ingest
