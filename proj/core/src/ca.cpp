#include "logicmine/ca.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include "logicmine/random.hpp"

namespace logicmine::ca {
namespace {

constexpr std::size_t words_for(std::size_t width) { return (width + 63) / 64; }

std::uint64_t tail_mask(std::size_t width) {
  const auto used = width & 63;
  return used == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
}

std::uint64_t mux(std::uint64_t if0, std::uint64_t if1, std::uint64_t sel) {
  return (if0 & ~sel) | (if1 & sel);
}

std::uint64_t row_hash(const Config& c) {
  // FNV-1a over the packed words.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto w : c.words()) {
    h ^= w;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

Config::Config(std::size_t width) : width_(width), words_(words_for(width), 0) {
  if (width < kMinWidth) {
    throw std::invalid_argument("width too small: " + std::to_string(width) + " < " +
                                std::to_string(kMinWidth));
  }
}

Config Config::from_string(std::string_view cells) {
  Config c(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != '0' && cells[i] != '1') throw std::invalid_argument("cells must be '0' or '1'");
    c.set(i, cells[i] == '1');
  }
  return c;
}

void Config::set(std::size_t i, bool value) noexcept {
  const auto bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t Config::count_ones() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<bool> Config::uniform_value() const noexcept {
  const auto ones = count_ones();
  if (ones == 0) return false;
  if (ones == width_) return true;
  return std::nullopt;
}

std::string Config::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

Config random_config(std::size_t width, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  Config c(width);
  Engine engine(seed);
  for (std::size_t i = 0; i < width; ++i) c.set(i, uniform01(engine) < p);
  return c;
}

Config step(const Config& config, const CaRule& rule) {
  // Leaf k of the multiplexer tree is all-ones iff f(k) = 1.
  std::array<std::uint64_t, 16> leaf{};
  for (unsigned k = 0; k < 16; ++k) leaf[k] = rule.table.bit(k) ? ~std::uint64_t{0} : 0;

  Config next(config.width());
  const auto in = config.words();
  auto out = next.words();
  const std::size_t n = in.size();
  for (std::size_t w = 0; w < n; ++w) {
    const std::uint64_t cur = in[w];
    const std::uint64_t prev = w > 0 ? in[w - 1] : 0;
    const std::uint64_t succ = w + 1 < n ? in[w + 1] : 0;
    // Bit j of each lane holds the neighbour of cell 64w + j.
    const std::uint64_t a = (cur << 2) | (prev >> 62);
    const std::uint64_t b = (cur << 1) | (prev >> 63);
    const std::uint64_t c = (cur >> 1) | (succ << 63);
    const std::uint64_t d = (cur >> 2) | (succ << 62);

    std::array<std::uint64_t, 8> by_abc{};
    for (unsigned j = 0; j < 8; ++j) by_abc[j] = mux(leaf[2 * j], leaf[2 * j + 1], d);
    std::array<std::uint64_t, 4> by_ab{};
    for (unsigned j = 0; j < 4; ++j) by_ab[j] = mux(by_abc[2 * j], by_abc[2 * j + 1], c);
    const std::uint64_t lo = mux(by_ab[0], by_ab[1], b);
    const std::uint64_t hi = mux(by_ab[2], by_ab[3], b);
    out[w] = mux(lo, hi, a);
  }
  out[n - 1] &= tail_mask(config.width());
  return next;
}

Config step_reference(const Config& config, const CaRule& rule) {
  const std::size_t n = config.width();
  auto cell = [&](std::ptrdiff_t i) {
    return i >= 0 && static_cast<std::size_t>(i) < n && config.get(static_cast<std::size_t>(i));
  };
  Config next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    next.set(i, rule(cell(s - 2), cell(s - 1), cell(s + 1), cell(s + 2)));
  }
  return next;
}

SpaceTime::SpaceTime(Config initial) { rows_.push_back(std::move(initial)); }

void SpaceTime::push_back(Config row) {
  if (row.width() != width()) throw std::invalid_argument("space-time rows must share one width");
  rows_.push_back(std::move(row));
}

SpaceTime evolve(const Config& init, const CaRule& rule, std::size_t steps) {
  SpaceTime st(init);
  Config current = init;
  for (std::size_t t = 0; t < steps; ++t) {
    current = step(current, rule);
    st.push_back(current);
  }
  return st;
}

std::string_view to_string(AttractorKind kind) noexcept {
  switch (kind) {
    case AttractorKind::fixed_point: return "fixed_point";
    case AttractorKind::cycle: return "cycle";
    case AttractorKind::none_within_horizon: return "none_within_horizon";
  }
  return "none_within_horizon";
}

AttractorInfo detect_attractor(const SpaceTime& st) {
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  seen.reserve(st.height());
  for (std::size_t t = 0; t < st.height(); ++t) {
    const auto& row = st.row(t);
    const auto h = row_hash(row);
    const auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (st.row(it->second) != row) continue;
      AttractorInfo info;
      info.transient_length = it->second;
      info.period = t - it->second;
      info.kind = info.period == 1 ? AttractorKind::fixed_point : AttractorKind::cycle;
      if (info.period == 1) info.homogeneous_value = row.uniform_value();
      return info;
    }
    seen.emplace(h, t);
  }
  return {};
}

std::vector<std::uint8_t> to_pgm(const SpaceTime& st) {
  const std::string header =
      "P5\n" + std::to_string(st.width()) + " " + std::to_string(st.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + st.width() * st.height());
  for (const auto& row : st.rows()) {
    for (std::size_t i = 0; i < row.width(); ++i) out.push_back(row.get(i) ? 0 : 255);
  }
  return out;
}

}  // namespace logicmine::ca
