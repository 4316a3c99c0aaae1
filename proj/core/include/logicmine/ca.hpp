#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logicmine/truth_table.hpp"

namespace logicmine::ca {

inline constexpr std::size_t kMinWidth = 5;

/// Local rule of a 1D automaton with neighbourhood (i-2, i-1, i+1, i+2):
/// A = x[i-2], B = x[i-1], C = x[i+1], D = x[i+2]. The cell's own state is
/// not an input.
struct CaRule {
  TruthTable table;

  constexpr bool operator()(bool left2, bool left1, bool right1, bool right2) const noexcept {
    return table(left2, left1, right1, right2);
  }

  constexpr bool operator==(const CaRule&) const noexcept = default;
};

constexpr CaRule rule_from_function(TruthTable tt) noexcept { return CaRule{tt}; }

/// Row of cells packed 64 per word; bits past width() are always zero.
class Config {
 public:
  /// All-zero row; throws std::invalid_argument if width < kMinWidth.
  explicit Config(std::size_t width);

  /// From a string of '0'/'1' characters.
  static Config from_string(std::string_view cells);

  std::size_t width() const noexcept { return width_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value) noexcept;

  std::size_t count_ones() const noexcept;
  /// The shared state if every cell agrees.
  std::optional<bool> uniform_value() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  std::string to_string() const;

  bool operator==(const Config&) const = default;

 private:
  std::size_t width_;
  std::vector<std::uint64_t> words_;
};

/// Each cell is 1 independently with probability p; deterministic in seed.
Config random_config(std::size_t width, double p, std::uint64_t seed);

/// One synchronous update; cells beyond either edge are permanently 0.
/// Evaluates the rule word-parallel over packed rows.
Config step(const Config& config, const CaRule& rule);

/// Cell-by-cell version of step(), kept as the test oracle.
Config step_reference(const Config& config, const CaRule& rule);

/// rows[0] is the initial condition, rows[t + 1] = step(rows[t]).
class SpaceTime {
 public:
  explicit SpaceTime(Config initial);

  std::size_t width() const noexcept { return rows_.front().width(); }
  /// Number of rows, steps() + 1.
  std::size_t height() const noexcept { return rows_.size(); }
  std::size_t steps() const noexcept { return rows_.size() - 1; }

  const Config& row(std::size_t t) const { return rows_.at(t); }
  std::span<const Config> rows() const noexcept { return rows_; }

  /// Throws std::invalid_argument on a width mismatch.
  void push_back(Config row);

  bool operator==(const SpaceTime&) const = default;

 private:
  std::vector<Config> rows_;
};

SpaceTime evolve(const Config& init, const CaRule& rule, std::size_t steps);

enum class AttractorKind { fixed_point, cycle, none_within_horizon };

std::string_view to_string(AttractorKind kind) noexcept;

struct AttractorInfo {
  AttractorKind kind = AttractorKind::none_within_horizon;
  /// Index of the first row that lies on the attractor.
  std::size_t transient_length = 0;
  /// Cycle length; 1 for a fixed point, 0 when none was found.
  std::size_t period = 0;
  /// Set when the fixed point has every cell in the same state.
  std::optional<bool> homogeneous_value;

  bool operator==(const AttractorInfo&) const = default;
};

/// First row that repeats an earlier one (hash lookup confirmed by full
/// comparison) fixes the transient and period.
AttractorInfo detect_attractor(const SpaceTime& st);

/// Binary PGM (P5): one pixel per cell, one row per time step, state 1 is
/// black (0) and state 0 white (255).
std::vector<std::uint8_t> to_pgm(const SpaceTime& st);

}  // namespace logicmine::ca
