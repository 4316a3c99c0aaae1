#include "logicmine/complexity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace logicmine::complexity {
namespace {

// Suffix automaton over {0, 1}, grown one symbol at a time.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::size_t capacity) {
    states_.reserve(2 * capacity + 1);
    states_.push_back({});
  }

  void extend(int c) {
    const auto cur = static_cast<std::int32_t>(states_.size());
    states_.push_back({states_[static_cast<std::size_t>(last_)].len + 1, -1, {-1, -1}});
    std::int32_t p = last_;
    while (p != -1 && at(p).next[c] == -1) {
      at(p).next[c] = cur;
      p = at(p).link;
    }
    if (p == -1) {
      at(cur).link = 0;
    } else {
      const std::int32_t q = at(p).next[c];
      if (at(p).len + 1 == at(q).len) {
        at(cur).link = q;
      } else {
        const auto clone = static_cast<std::int32_t>(states_.size());
        states_.push_back({at(p).len + 1, at(q).link, at(q).next});
        while (p != -1 && at(p).next[c] == q) {
          at(p).next[c] = clone;
          p = at(p).link;
        }
        at(q).link = clone;
        at(cur).link = clone;
      }
    }
    last_ = cur;
  }

  /// Length of the longest suffix of the text that also ends earlier.
  std::int32_t repeated_suffix() const { return states_[static_cast<std::size_t>(at(last_).link)].len; }

 private:
  struct State {
    std::int32_t len = 0;
    std::int32_t link = -1;
    std::array<std::int32_t, 2> next{-1, -1};
  };

  State& at(std::int32_t i) { return states_[static_cast<std::size_t>(i)]; }
  const State& at(std::int32_t i) const { return states_[static_cast<std::size_t>(i)]; }

  std::vector<State> states_;
  std::int32_t last_ = 0;
};

}  // namespace

std::string_view to_string(WolframClass c) noexcept {
  switch (c) {
    case WolframClass::I: return "I";
    case WolframClass::II: return "II";
    case WolframClass::III_IV: return "III_IV";
    case WolframClass::unclassified: return "unclassified";
  }
  return "unclassified";
}

WolframClass parse_wolfram_class(std::string_view text) {
  for (auto c : {WolframClass::I, WolframClass::II, WolframClass::III_IV, WolframClass::unclassified}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("unknown Wolfram class '" + std::string(text) + "'");
}

std::vector<std::uint8_t> render_png(const ca::SpaceTime& st, int level) {
  std::vector<std::uint8_t> pixels;
  pixels.reserve(st.width() * st.height());
  for (const auto& row : st.rows()) {
    for (std::size_t i = 0; i < row.width(); ++i) pixels.push_back(row.get(i) ? 0 : 255);
  }
  return png::encode_gray8(pixels, st.width(), st.height(), level);
}

std::size_t lz_png_size(const ca::SpaceTime& st, int level) { return render_png(st, level).size(); }

std::size_t lz76(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw std::invalid_argument("lz76 of an empty sequence");
  SuffixAutomaton sam(bits.size());
  std::size_t phrases = 0;
  std::size_t phrase_start = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    sam.extend(bits[i] != 0 ? 1 : 0);
    // The current phrase bits[phrase_start..i] has an earlier occurrence iff
    // it fits inside the longest repeated suffix.
    if (static_cast<std::size_t>(sam.repeated_suffix()) < i - phrase_start + 1) {
      ++phrases;
      phrase_start = i + 1;
    }
  }
  if (phrase_start < bits.size()) ++phrases;
  return phrases;
}

std::size_t lz76(std::string_view bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit strings hold only '0' and '1'");
    v.push_back(c == '1' ? 1 : 0);
  }
  return lz76(std::span<const std::uint8_t>(v));
}

std::vector<std::uint8_t> space_time_bits(const ca::SpaceTime& st) {
  std::vector<std::uint8_t> bits;
  bits.reserve(st.width() * st.height());
  for (const auto& row : st.rows()) {
    for (std::size_t i = 0; i < row.width(); ++i) bits.push_back(row.get(i) ? 1 : 0);
  }
  return bits;
}

double normalized_lz76(std::size_t factors, std::size_t n) noexcept {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  return static_cast<double>(factors) * std::log2(dn) / dn;
}

double activity(const ca::SpaceTime& st) noexcept {
  if (st.steps() == 0) return 0.0;
  std::size_t changed = 0;
  for (std::size_t t = 0; t + 1 < st.height(); ++t) {
    const auto a = st.row(t).words();
    const auto b = st.row(t + 1).words();
    for (std::size_t w = 0; w < a.size(); ++w) changed += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  }
  return static_cast<double>(changed) / (static_cast<double>(st.steps()) * static_cast<double>(st.width()));
}

WolframClass classify_wolfram(const ca::AttractorInfo& attractor, double normalized_lz,
                              double activity_fraction, const ClassifierOptions& options) {
  using ca::AttractorKind;
  if (attractor.kind == AttractorKind::fixed_point) {
    return attractor.homogeneous_value ? WolframClass::I : WolframClass::II;
  }
  if (attractor.kind == AttractorKind::cycle && attractor.period <= options.max_period) {
    return WolframClass::II;
  }
  if (normalized_lz >= options.lz_floor && activity_fraction >= options.activity_floor) {
    return WolframClass::III_IV;
  }
  return WolframClass::unclassified;
}

ComplexityReport analyze(std::uint32_t function_id, std::uint64_t seed, const ca::SpaceTime& st,
                         const ClassifierOptions& options, int png_level) {
  ComplexityReport r;
  r.function_id = function_id;
  r.seed = seed;
  r.width = st.width();
  r.steps = st.steps();
  r.png_bytes = lz_png_size(st, png_level);
  const auto bits = space_time_bits(st);
  r.lz76_factors = lz76(bits);
  r.normalized_lz76 = normalized_lz76(r.lz76_factors, bits.size());
  r.activity = activity(st);
  r.attractor = ca::detect_attractor(st);
  r.wolfram_class = classify_wolfram(r.attractor, r.normalized_lz76, r.activity, options);
  return r;
}

std::string to_json(const ComplexityReport& r) {
  nlohmann::ordered_json attractor;
  attractor["kind"] = std::string(ca::to_string(r.attractor.kind));
  attractor["transient_length"] = r.attractor.transient_length;
  attractor["period"] = r.attractor.period;
  if (r.attractor.homogeneous_value) {
    attractor["homogeneous_value"] = *r.attractor.homogeneous_value ? 1 : 0;
  } else {
    attractor["homogeneous_value"] = nullptr;
  }

  nlohmann::ordered_json j;
  j["id"] = r.function_id;
  j["seed"] = r.seed;
  j["width"] = r.width;
  j["steps"] = r.steps;
  j["png_bytes"] = r.png_bytes;
  j["lz76_factors"] = r.lz76_factors;
  j["normalized_lz76"] = r.normalized_lz76;
  j["activity"] = r.activity;
  j["class"] = std::string(to_string(r.wolfram_class));
  j["attractor"] = std::move(attractor);
  return j.dump(2) + "\n";
}

ComplexityReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ComplexityReport r;
    r.function_id = j.at("id").get<std::uint32_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.width = j.at("width").get<std::size_t>();
    r.steps = j.at("steps").get<std::size_t>();
    r.png_bytes = j.at("png_bytes").get<std::size_t>();
    r.lz76_factors = j.at("lz76_factors").get<std::size_t>();
    r.normalized_lz76 = j.at("normalized_lz76").get<double>();
    r.activity = j.at("activity").get<double>();
    r.wolfram_class = parse_wolfram_class(j.at("class").get<std::string>());
    const auto& a = j.at("attractor");
    const auto kind = a.at("kind").get<std::string>();
    if (kind == "fixed_point") {
      r.attractor.kind = ca::AttractorKind::fixed_point;
    } else if (kind == "cycle") {
      r.attractor.kind = ca::AttractorKind::cycle;
    } else if (kind == "none_within_horizon") {
      r.attractor.kind = ca::AttractorKind::none_within_horizon;
    } else {
      throw std::invalid_argument("unknown attractor kind '" + kind + "'");
    }
    r.attractor.transient_length = a.at("transient_length").get<std::size_t>();
    r.attractor.period = a.at("period").get<std::size_t>();
    if (!a.at("homogeneous_value").is_null()) {
      r.attractor.homogeneous_value = a.at("homogeneous_value").get<int>() != 0;
    }
    if (r.function_id > 0xFFFF) throw std::invalid_argument("function id out of range");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed complexity report: ") + e.what());
  }
}

CorrelationResult correlation(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("≥ 2 points required for a correlation");
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  CorrelationResult r;
  r.n_points = points.size();
  if (sxx == 0.0 || syy == 0.0) {
    r.degenerate = true;
    return r;
  }
  r.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return r;
}

}  // namespace logicmine::complexity
