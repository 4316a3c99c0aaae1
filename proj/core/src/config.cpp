#include "logicmine/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace logicmine {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_value(std::string_view text, const std::string& key) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid value '" + std::string(text) + "' for " + key);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == text.npos ? text.npos : pos - start)));
    if (pos == text.npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == text.npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == line.npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    cfg.values_[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) {
    if (part.empty()) continue;
    out.push_back(parse_value<double>(part, "number list"));
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (auto part : split(text, ',')) {
    if (part.empty()) continue;
    // "a..b" expands to the inclusive range.
    if (const auto dots = part.find(".."); dots != part.npos) {
      const auto lo = parse_value<std::uint64_t>(part.substr(0, dots), "seed range");
      const auto hi = parse_value<std::uint64_t>(part.substr(dots + 2), "seed range");
      if (hi < lo) throw std::invalid_argument("empty seed range " + std::string(part));
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
      continue;
    }
    out.push_back(parse_value<std::uint64_t>(part, "seed list"));
  }
  return out;
}

void PipelineConfig::apply(const KeyValueConfig& file) {
  for (const auto& [key, value] : file.values()) {
    if (key == "units") {
      schema.data_units = ingest::parse_unit(value);
    } else if (key == "sync_units") {
      schema.sync_units = ingest::parse_unit(value);
    } else if (key == "sync_amplitude") {
      schema.sync_amplitude_mv = parse_value<double>(value, key);
    } else if (key == "sample_period") {
      schema.sample_period = parse_value<double>(value, key);
    } else if (key == "baseline") {
      if (value == "median") {
        peaks.baseline = ingest::Baseline::median;
      } else if (value == "zero") {
        peaks.baseline = ingest::Baseline::zero;
      } else {
        throw std::invalid_argument("baseline must be 'median' or 'zero'");
      }
    } else if (key == "min_peak_width") {
      peaks.min_width = parse_value<std::size_t>(value, key);
    } else if (key == "thresholds") {
      thresholds.clear();
      for (double t : parse_number_list(value)) thresholds.emplace_back(t);
    } else if (key == "samples_per_state") {
      samples_per_state = parse_value<std::size_t>(value, key);
    } else if (key == "peak_amplitude") {
      peak_amplitude_mv = parse_value<double>(value, key);
    } else if (key == "noise_amplitude") {
      noise_amplitude_mv = parse_value<double>(value, key);
    } else if (key == "width") {
      width = parse_value<std::size_t>(value, key);
    } else if (key == "steps") {
      steps = parse_value<std::size_t>(value, key);
    } else if (key == "p") {
      p = parse_value<double>(value, key);
    } else if (key == "seeds") {
      seeds = parse_seed_list(value);
    } else if (key == "png_level") {
      png_level = parse_value<int>(value, key);
    } else if (key == "max_period") {
      classifier.max_period = parse_value<std::size_t>(value, key);
    } else if (key == "lz_floor") {
      classifier.lz_floor = parse_value<double>(value, key);
    } else if (key == "activity_floor") {
      classifier.activity_floor = parse_value<double>(value, key);
    } else if (key == "top_k") {
      top_k = parse_value<std::size_t>(value, key);
    } else if (key == "output_dir") {
      output_dir = value;
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

void PipelineConfig::validate() const {
  if (width < ca::kMinWidth) throw std::invalid_argument("width too small: " + std::to_string(width));
  if (thresholds.empty()) throw std::invalid_argument("threshold list is empty");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i - 1].theta() < thresholds[i].theta())) {
      throw std::invalid_argument("thresholds must be strictly ascending");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (png_level < 0 || png_level > 9) throw std::invalid_argument("png_level must lie in 0..9");
  if (samples_per_state < 4) throw std::invalid_argument("samples_per_state must be at least 4");
  if (!(schema.sample_period > 0.0)) throw std::invalid_argument("sample_period must be positive");
}

}  // namespace logicmine
