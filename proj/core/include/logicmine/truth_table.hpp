#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace logicmine {

/// Number of input combinations of a 4-input Boolean function.
inline constexpr unsigned kInputStates = 16;

/// Index of the input assignment (A, B, C, D); A is the most significant bit.
constexpr unsigned input_index(bool a, bool b, bool c, bool d) noexcept {
  return (a ? 8u : 0u) | (b ? 4u : 0u) | (c ? 2u : 0u) | (d ? 1u : 0u);
}

/// Output column of a 4-input/1-output Boolean function.
///
/// Bit k holds f at input index k = 8A + 4B + 2C + D, and the table's id is
/// sum(bit_k * 2^k). With that convention AND (only k = 15 set) is 32768 and
/// NAND (every k except 15) is 32767.
class TruthTable {
 public:
  constexpr TruthTable() noexcept = default;

  static constexpr TruthTable from_id(std::uint16_t id) noexcept { return TruthTable{id}; }

  static constexpr TruthTable constant(bool value) noexcept {
    return TruthTable{static_cast<std::uint16_t>(value ? 0xFFFFu : 0u)};
  }

  constexpr bool bit(unsigned k) const noexcept { return ((bits_ >> (k & 15u)) & 1u) != 0; }

  constexpr bool operator()(bool a, bool b, bool c, bool d) const noexcept {
    return bit(input_index(a, b, c, d));
  }

  constexpr TruthTable with_bit(unsigned k, bool value) const noexcept {
    const auto mask = static_cast<std::uint16_t>(1u << (k & 15u));
    return TruthTable{static_cast<std::uint16_t>(value ? (bits_ | mask) : (bits_ & ~mask))};
  }

  constexpr std::uint16_t id() const noexcept { return bits_; }

  constexpr bool is_false() const noexcept { return bits_ == 0; }
  constexpr bool is_true() const noexcept { return bits_ == 0xFFFF; }
  constexpr bool is_trivial() const noexcept { return is_false() || is_true(); }

  constexpr TruthTable operator~() const noexcept {
    return TruthTable{static_cast<std::uint16_t>(~bits_)};
  }

  constexpr auto operator<=>(const TruthTable&) const noexcept = default;

 private:
  constexpr explicit TruthTable(std::uint16_t bits) noexcept : bits_(bits) {}

  std::uint16_t bits_ = 0;
};

/// Decimal representation used for histograms and file names.
constexpr std::uint32_t function_id(TruthTable tt) noexcept { return tt.id(); }

/// 16-character column, bit 0 first ("0111..." for OR).
std::string to_bit_string(TruthTable tt);

}  // namespace logicmine
