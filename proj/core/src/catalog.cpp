#include "logicmine/catalog.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace logicmine::catalog {
namespace {

constexpr std::array<Entry, 16> kEntries{{
    {1, 145, R"($\overline{A}+\overline{B}+\overline{C}+\overline{D}$ ({\sc nand}))"},
    {2, 83,
     R"($A\overline{B}+A\overline{C}+A\overline{D}+\overline{A}B+B\overline{C}+B\overline{D}+\overline{A}C+\overline{B}C+C\overline{D}+\overline{A}D+\overline{B}D+\overline{C}D$)"},
    {3, 81, R"($AC\overline{D}+\overline{A}B\overline{C}+\overline{A}\overline{B}C+\overline{A}\overline{B}D$)"},
    {4, 59,
     R"($A\overline{C}+A\overline{D}+\overline{A}C+C\overline{D}+\overline{A}D+\overline{B}D+\overline{C}D$)"},
    {5, 55, R"($\overline{A}B+C\overline{D}+\overline{A}D$)"},
    {6, 53, R"($A\overline{B}CD$)"},
    {7, 47, R"($B\overline{D}+C\overline{D}+\overline{A}D+\overline{B}\overline{C}D$)"},
    {8, 46, R"($AB\overline{C}\overline{D}$)"},
    {9, 46, R"($A+B+C+D$ ({\sc or}))"},
    {10, 40,
     R"($A\overline{B}+A\overline{D}+\overline{A}B+B\overline{D}+\overline{A}D+\overline{B}D+\overline{C}D$)"},
    {11, 37, R"($A\overline{B}\overline{C}\overline{D}$)"},
    {12, 37, R"($A\overline{D}+\overline{A}B+B\overline{C}+\overline{A}D+\overline{B}CD$)"},
    {13, 37,
     R"($A\overline{B}+A\overline{C}+A\overline{D}+\overline{A}D+\overline{B}D+\overline{C}D\overline{A}BC+BC\overline{D}$)"},
    {14, 32,
     R"($A\overline{D}+\overline{A}B+B\overline{D}+\overline{A}C+C\overline{D}+\overline{A}D+A\overline{B}\overline{C}+\overline{B}\overline{C}D$)"},
    {15, 29,
     R"($\overline{C}+A\overline{B}+A\overline{D}+\overline{A}B+B\overline{D}\overline{A}D+\overline{B}D$)"},
    {16, 28, R"($\overline{A}B+\overline{A}C+\overline{B}D+BC\overline{D}+A\overline{B}\overline{C}$)"},
}};

}  // namespace

std::span<const Entry> top_functions() noexcept { return kEntries; }

const Entry& entry(int index) {
  if (index < 1 || index > static_cast<int>(kEntries.size())) {
    throw std::out_of_range("no catalog function F" + std::to_string(index));
  }
  return kEntries[static_cast<std::size_t>(index - 1)];
}

const Entry& entry(std::string_view label) {
  if (label.size() < 2 || (label[0] != 'F' && label[0] != 'f')) {
    throw std::out_of_range("not a catalog label: " + std::string(label));
  }
  int index = 0;
  for (char c : label.substr(1)) {
    if (c < '0' || c > '9') throw std::out_of_range("not a catalog label: " + std::string(label));
    index = index * 10 + (c - '0');
  }
  return entry(index);
}

sop::ImportedRow import_entry(const Entry& e) { return sop::import_latex_row(e.latex, e.index); }

TruthTable table_of(const Entry& e) {
  const auto row = import_entry(e);
  if (row.expr) return sop::to_truth_table(*row.expr);
  if (!row.readings.empty()) return sop::to_truth_table(row.readings.front());
  throw std::logic_error("catalog row F" + std::to_string(e.index) + " does not parse: " + row.error);
}

bool omitted_from_scatter(const Entry& e) noexcept {
  return e.index == 1 || e.index == 6 || e.index == 8 || e.index == 9;
}

}  // namespace logicmine::catalog
