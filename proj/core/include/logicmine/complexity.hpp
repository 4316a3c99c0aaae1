#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logicmine/ca.hpp"
#include "logicmine/png.hpp"

namespace logicmine::complexity {

/// Class III and IV are not told apart automatically.
enum class WolframClass { I, II, III_IV, unclassified };

std::string_view to_string(WolframClass c) noexcept;
/// Inverse of to_string; throws std::invalid_argument.
WolframClass parse_wolfram_class(std::string_view text);

/// The space-time diagram as a deterministic grayscale PNG (state 1 black).
std::vector<std::uint8_t> render_png(const ca::SpaceTime& st, int level = png::kDeflateLevel);

/// Compressed-image size, the deflate proxy for Lempel-Ziv complexity.
std::size_t lz_png_size(const ca::SpaceTime& st, int level = png::kDeflateLevel);

/// Phrase count of the LZ76 (exhaustive history) parsing: each phrase is the
/// shortest prefix of the remaining input that does not occur starting
/// earlier; the final phrase may be a repeat. Any non-zero byte is a 1.
/// Linear time via an online suffix automaton. Throws on empty input.
std::size_t lz76(std::span<const std::uint8_t> bits);
std::size_t lz76(std::string_view bits);

/// Row-major cell states, the same scan order as the rendered image.
std::vector<std::uint8_t> space_time_bits(const ca::SpaceTime& st);

/// factors / (n / log2 n); about 1 for an i.i.d. fair-coin sequence.
double normalized_lz76(std::size_t factors, std::size_t n) noexcept;

/// Mean fraction of cells that change between consecutive rows.
double activity(const ca::SpaceTime& st) noexcept;

struct ClassifierOptions {
  /// Longest cycle still read as periodic (class II) behaviour.
  std::size_t max_period = 64;
  /// Minimum normalized LZ76 for class III/IV.
  double lz_floor = 0.05;
  /// Minimum activity for class III/IV.
  double activity_floor = 0.01;
};

/// I: homogeneous fixed point. II: other fixed point, or cycle with period
/// <= max_period. III_IV: no such attractor, LZ and activity above their
/// floors. Otherwise unclassified.
WolframClass classify_wolfram(const ca::AttractorInfo& attractor, double normalized_lz,
                              double activity, const ClassifierOptions& options = {});

struct ComplexityReport {
  std::uint32_t function_id = 0;
  std::uint64_t seed = 0;
  std::size_t width = 0;
  std::size_t steps = 0;
  std::size_t png_bytes = 0;
  std::size_t lz76_factors = 0;
  double normalized_lz76 = 0.0;
  double activity = 0.0;
  ca::AttractorInfo attractor;
  WolframClass wolfram_class = WolframClass::unclassified;

  bool operator==(const ComplexityReport&) const = default;
};

ComplexityReport analyze(std::uint32_t function_id, std::uint64_t seed, const ca::SpaceTime& st,
                         const ClassifierOptions& options = {},
                         int png_level = png::kDeflateLevel);

/// Pretty-printed JSON object, stable key order.
std::string to_json(const ComplexityReport& report);
/// Throws std::invalid_argument on malformed input.
ComplexityReport report_from_json(std::string_view text);

struct CorrelationResult {
  double pearson_r = 0.0;
  std::size_t n_points = 0;
  /// Set when one variable is constant; pearson_r is then 0.
  bool degenerate = false;
};

/// Pearson r over (x, y) points; throws std::invalid_argument for fewer than 2.
CorrelationResult correlation(std::span<const std::pair<double, double>> points);

}  // namespace logicmine::complexity
