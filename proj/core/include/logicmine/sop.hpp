#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logicmine/truth_table.hpp"

namespace logicmine::sop {

enum class Var : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

constexpr char var_name(Var v) noexcept { return static_cast<char>('A' + static_cast<int>(v)); }

/// Bit of `v` in an input index (A = 8, ..., D = 1).
constexpr std::uint8_t var_bit(Var v) noexcept {
  return static_cast<std::uint8_t>(8u >> static_cast<unsigned>(v));
}

struct Literal {
  Var var = Var::A;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
};

class SopError : public std::runtime_error {
 public:
  SopError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}

  /// 0-based character offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Conjunction of literals over distinct variables, stored as two 4-bit masks
/// laid out like an input index: `care` marks the variables present and
/// `value` their required values.
class ProductTerm {
 public:
  /// Throws SopError on an empty list or a repeated variable.
  static ProductTerm from_literals(std::span<const Literal> literals);
  /// Throws std::invalid_argument unless care != 0 and value is a subset of care.
  static ProductTerm from_masks(std::uint8_t care, std::uint8_t value);
  /// The single-minterm term for input index k.
  static ProductTerm minterm(unsigned k);

  std::uint8_t care() const noexcept { return care_; }
  std::uint8_t value() const noexcept { return value_; }

  std::size_t literal_count() const noexcept;
  std::vector<Literal> literals() const;

  bool covers(unsigned input) const noexcept { return (input & care_) == value_; }
  /// Bit k set iff the term covers input index k.
  std::uint16_t cover_mask() const noexcept;

  /// Literals in A..D order, negation written as a '~' prefix: "A~BCD".
  std::string to_string() const;

  auto operator<=>(const ProductTerm&) const = default;

 private:
  ProductTerm(std::uint8_t care, std::uint8_t value) : care_(care), value_(value) {}

  std::uint8_t care_ = 0;
  std::uint8_t value_ = 0;
};

/// Sum of products, or one of the constants TRUE / FALSE.
class SopExpr {
 public:
  static SopExpr constant(bool value);
  /// Throws std::invalid_argument on an empty term list.
  static SopExpr from_terms(std::vector<ProductTerm> terms);

  std::optional<bool> constant_value() const noexcept { return constant_; }
  bool is_constant() const noexcept { return constant_.has_value(); }

  std::span<const ProductTerm> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  std::size_t literal_count() const noexcept;

  bool operator==(const SopExpr&) const = default;

 private:
  std::optional<bool> constant_;
  std::vector<ProductTerm> terms_;
};

/// Terms joined by " + " in stored order; "TRUE" / "FALSE" for constants.
std::string format(const SopExpr& expr);

/// Grammar, whitespace-insensitive:
///   expr   := 'TRUE' | 'FALSE' | term ('+' term)*
///   term   := '(' factor+ ')' | factor+
///   factor := ['~'] ('A' | 'B' | 'C' | 'D')
/// Throws SopError carrying the offending position.
SopExpr parse_sop(std::string_view text);

/// Rewrites LaTeX notation into the ASCII grammar: `\overline{X}` becomes
/// `~X`, math delimiters, line breaks, spacing macros and `({\sc name})`
/// annotations are dropped, runs of whitespace collapse to one space.
/// Anything else is left for parse_sop to reject.
std::string normalize_latex(std::string_view text);

/// Value of the expression at input index `input` = 8A + 4B + 2C + D.
bool eval(const SopExpr& expr, unsigned input) noexcept;
bool eval(const SopExpr& expr, bool a, bool b, bool c, bool d) noexcept;

TruthTable to_truth_table(const SopExpr& expr) noexcept;

/// Every prime implicant of `tt` (Quine-McCluskey), sorted by to_string().
/// A tautology has only the empty implicant, returned as the constant TRUE.
/// Throws std::domain_error for the constant FALSE.
SopExpr prime_implicants(TruthTable tt);

/// Exact minimum sum of products: prime implicants, then Petrick's method.
///
/// Covers are ranked by term count, then literal count, then the text of the
/// cover with its terms sorted; the result lists terms in that sorted order.
SopExpr minimize(TruthTable tt);

/// "<id>:<minimal SOP>"; equal keys iff the expressions denote the same function.
std::string canonical_key(TruthTable tt);
std::string canonicalize(const SopExpr& expr);

/// Alternative readings of a row whose product terms run into each other
/// (a term repeating a variable). Each reading inserts one '+' inside every
/// such term; only splits giving valid terms are kept. Readings made solely of
/// prime implicants come first, otherwise split order is preserved. Returns
/// an empty list when the text has no such term or cannot be repaired.
std::vector<SopExpr> run_on_readings(std::string_view normalized);

/// One source row of a LaTeX expression list.
struct ImportedRow {
  std::size_t line = 0;  // 1-based
  std::string source;
  std::string normalized;
  std::optional<SopExpr> expr;
  std::string error;
  /// Filled for malformed rows that run_on_readings can repair.
  std::vector<SopExpr> readings;

  bool ok() const noexcept { return expr.has_value(); }
  bool flagged() const noexcept { return !ok() && !readings.empty(); }
};

ImportedRow import_latex_row(std::string_view source, std::size_t line = 0);

/// Imports a LaTeX list (one expression per line, blank lines skipped).
std::vector<ImportedRow> import_latex_list(std::string_view text);

/// Reads a corpus in the ASCII grammar, one expression per line; blank lines
/// and lines starting with '#' are skipped. Throws SopError naming the line.
std::vector<SopExpr> load_corpus(const std::filesystem::path& path);

}  // namespace logicmine::sop
