#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "logicmine/sop.hpp"
#include "logicmine/truth_table.hpp"

namespace logicmine::catalog {

/// One of the 16 most frequent non-trivial functions mined from the
/// 14-repeat fungal recording campaign, with its occurrence count.
struct Entry {
  int index;  // 1..16, the "F" number
  int count;
  std::string_view latex;
};

std::span<const Entry> top_functions() noexcept;

/// Entry with the given F number (1..16) or label ("F13"); throws
/// std::out_of_range otherwise.
const Entry& entry(int index);
const Entry& entry(std::string_view label);

/// Import of the LaTeX row. F13 and F15 are typeset with two products run
/// together, so they come back flagged with their candidate readings.
sop::ImportedRow import_entry(const Entry& e);

/// Function of the row: the parsed expression, or the first-ranked reading
/// of a flagged row.
TruthTable table_of(const Entry& e);

/// F1, F6, F8 and F9 sit at LZ ~ 0 and are left out of the count-vs-LZ scatter.
bool omitted_from_scatter(const Entry& e) noexcept;

// Campaign totals.
inline constexpr std::size_t kRepeats = 14;
inline constexpr std::size_t kThresholds = 32;
inline constexpr std::size_t kTruthTables = 3136;
inline constexpr std::size_t kStateGraphs = 448;
inline constexpr std::size_t kUniqueFunctions = 470;
inline constexpr int kFalseCount = 238;
inline constexpr int kTrueCount = 237;
inline constexpr int kNandCount = 145;
inline constexpr int kOrCount = 46;
inline constexpr int kAndCount = 8;

}  // namespace logicmine::catalog
