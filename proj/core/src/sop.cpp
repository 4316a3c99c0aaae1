#include "logicmine/sop.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <utility>

namespace logicmine::sop {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::optional<Var> var_from_char(char c) {
  if (c >= 'A' && c <= 'D') return static_cast<Var>(c - 'A');
  return std::nullopt;
}

std::string symbol_text(char c) { return std::string("'") + c + "'"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SopExpr parse() {
    skip_space();
    const auto rest = trimmed_rest();
    if (rest == "TRUE") return SopExpr::constant(true);
    if (rest == "FALSE") return SopExpr::constant(false);
    if (at_end()) throw SopError("empty expression", pos_);

    std::vector<ProductTerm> terms;
    while (true) {
      terms.push_back(parse_term());
      skip_space();
      if (at_end()) break;
      if (peek() != '+') {
        throw SopError("unknown symbol " + symbol_text(peek()) + " at position " +
                           std::to_string(pos_),
                       pos_);
      }
      ++pos_;
    }
    return SopExpr::from_terms(std::move(terms));
  }

 private:
  ProductTerm parse_term() {
    skip_space();
    const std::size_t start = pos_;
    const bool paren = !at_end() && peek() == '(';
    if (paren) ++pos_;

    std::vector<Literal> literals;
    std::uint8_t seen = 0;
    while (true) {
      skip_space();
      if (at_end()) break;
      const std::size_t factor_pos = pos_;
      bool negated = false;
      if (peek() == '~') {
        negated = true;
        ++pos_;
        skip_space();
        if (at_end() || !var_from_char(peek())) {
          throw SopError("expected variable after '~' at position " + std::to_string(pos_), pos_);
        }
      }
      const auto var = var_from_char(peek());
      if (!var) break;
      ++pos_;
      if (seen & var_bit(*var)) {
        throw SopError(std::string("duplicate variable ") + var_name(*var) + " at position " +
                           std::to_string(factor_pos),
                       factor_pos);
      }
      seen |= var_bit(*var);
      literals.push_back({*var, negated});
    }

    if (paren) {
      if (at_end() || peek() != ')') {
        if (!at_end() && peek() != '+') {
          throw SopError("unknown symbol " + symbol_text(peek()) + " at position " +
                             std::to_string(pos_),
                         pos_);
        }
        throw SopError("expected ')' at position " + std::to_string(pos_), pos_);
      }
      if (literals.empty()) throw SopError("empty term at position " + std::to_string(start), start);
      ++pos_;
    }
    if (literals.empty()) {
      if (!at_end() && peek() != '+' && peek() != ')') {
        throw SopError("unknown symbol " + symbol_text(peek()) + " at position " +
                           std::to_string(pos_),
                       pos_);
      }
      throw SopError("empty term at position " + std::to_string(start), start);
    }
    return ProductTerm::from_literals(literals);
  }

  std::string_view trimmed_rest() const {
    auto rest = text_.substr(pos_);
    while (!rest.empty() && is_space(rest.back())) rest.remove_suffix(1);
    return rest;
  }

  void skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string cover_text(std::vector<std::string> terms) {
  std::sort(terms.begin(), terms.end());
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += t;
  }
  return out;
}

std::vector<ProductTerm> quine_mccluskey(std::uint16_t ones) {
  using Implicant = std::pair<std::uint8_t, std::uint8_t>;  // (care, value)
  std::set<Implicant> current;
  for (unsigned k = 0; k < kInputStates; ++k) {
    if ((ones >> k) & 1u) current.insert({0xF, static_cast<std::uint8_t>(k)});
  }

  std::vector<ProductTerm> primes;
  while (!current.empty()) {
    std::set<Implicant> next;
    std::set<Implicant> merged;
    for (auto i = current.begin(); i != current.end(); ++i) {
      for (auto j = std::next(i); j != current.end(); ++j) {
        if (i->first != j->first) continue;
        const auto diff = static_cast<std::uint8_t>(i->second ^ j->second);
        if (std::popcount(diff) != 1) continue;
        next.insert({static_cast<std::uint8_t>(i->first & ~diff),
                     static_cast<std::uint8_t>(i->second & ~diff)});
        merged.insert(*i);
        merged.insert(*j);
      }
    }
    for (const auto& imp : current) {
      // care == 0 only arises for the tautology, which callers handle first.
      if (!merged.contains(imp) && imp.first != 0) {
        primes.push_back(ProductTerm::from_masks(imp.first, imp.second));
      }
    }
    current = std::move(next);
  }
  std::sort(primes.begin(), primes.end(),
            [](const ProductTerm& a, const ProductTerm& b) { return a.to_string() < b.to_string(); });
  return primes;
}

// Multiplies out the prime-implicant chart as a product of sums, keeping
// only minimal (absorption-free) selections. Bit i of a selection = primes[i].
std::vector<std::uint64_t> petrick(const std::vector<ProductTerm>& primes, std::uint16_t ones) {
  std::vector<std::uint64_t> clauses;
  for (unsigned k = 0; k < kInputStates; ++k) {
    if (!((ones >> k) & 1u)) continue;
    std::uint64_t clause = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (primes[i].covers(k)) clause |= std::uint64_t{1} << i;
    }
    clauses.push_back(clause);
  }
  // A clause that contains another is implied by it.
  std::sort(clauses.begin(), clauses.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  std::vector<std::uint64_t> reduced;
  for (auto c : clauses) {
    const bool implied = std::any_of(reduced.begin(), reduced.end(),
                                     [c](std::uint64_t r) { return (r & c) == r; });
    if (!implied) reduced.push_back(c);
  }

  std::vector<std::uint64_t> products{0};
  for (auto clause : reduced) {
    std::vector<std::uint64_t> expanded;
    for (auto p : products) {
      if (p & clause) {
        expanded.push_back(p);
        continue;
      }
      for (auto rest = clause; rest != 0; rest &= rest - 1) {
        expanded.push_back(p | (rest & (~rest + 1)));
      }
    }
    std::sort(expanded.begin(), expanded.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    products.clear();
    for (auto e : expanded) {
      const bool absorbed = std::any_of(products.begin(), products.end(),
                                        [e](std::uint64_t q) { return (q & e) == q; });
      if (!absorbed) products.push_back(e);
    }
  }
  return products;
}

bool all_terms_prime(const SopExpr& expr) {
  if (expr.is_constant()) return true;
  const auto ones = to_truth_table(expr).id();
  for (const auto& t : expr.terms()) {
    for (std::uint8_t bit = 1; bit < 16; bit <<= 1) {
      if (!(t.care() & bit) || t.care() == bit) continue;
      const auto widened = ProductTerm::from_masks(static_cast<std::uint8_t>(t.care() & ~bit),
                                                   static_cast<std::uint8_t>(t.value() & ~bit));
      if ((widened.cover_mask() & ~ones & 0xFFFF) == 0) return false;
    }
    if (std::popcount(t.care()) == 1 && ones == 0xFFFF) return false;
  }
  return true;
}

struct Factor {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Factor spans of a product term; nullopt if anything but factors, parens
// and whitespace appears.
std::optional<std::vector<Factor>> factor_spans(std::string_view term) {
  std::vector<Factor> factors;
  std::size_t i = 0;
  while (i < term.size()) {
    const char c = term[i];
    if (is_space(c) || c == '(' || c == ')') {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (c == '~') {
      ++i;
      while (i < term.size() && is_space(term[i])) ++i;
    }
    if (i >= term.size() || !var_from_char(term[i])) return std::nullopt;
    factors.push_back({begin, ++i});
  }
  return factors;
}

std::string join_factors(std::string_view term, std::span<const Factor> factors) {
  std::string out;
  for (const auto& f : factors) out.append(term.substr(f.begin, f.end - f.begin));
  return out;
}

bool parses(std::string_view text) {
  try {
    parse_sop(text);
    return true;
  } catch (const SopError&) {
    return false;
  }
}

}  // namespace

ProductTerm ProductTerm::from_literals(std::span<const Literal> literals) {
  if (literals.empty()) throw SopError("empty term", 0);
  std::uint8_t care = 0;
  std::uint8_t value = 0;
  for (const auto& lit : literals) {
    const auto bit = var_bit(lit.var);
    if (care & bit) throw SopError(std::string("duplicate variable ") + var_name(lit.var), 0);
    care |= bit;
    if (!lit.negated) value |= bit;
  }
  return ProductTerm(care, value);
}

ProductTerm ProductTerm::from_masks(std::uint8_t care, std::uint8_t value) {
  if ((care & 0xF) == 0 || (care & ~0xF) != 0 || (value & ~care) != 0) {
    throw std::invalid_argument("invalid product term masks");
  }
  return ProductTerm(care, value);
}

ProductTerm ProductTerm::minterm(unsigned k) {
  return ProductTerm(0xF, static_cast<std::uint8_t>(k & 0xF));
}

std::size_t ProductTerm::literal_count() const noexcept {
  return static_cast<std::size_t>(std::popcount(care_));
}

std::vector<Literal> ProductTerm::literals() const {
  std::vector<Literal> out;
  for (auto v : {Var::A, Var::B, Var::C, Var::D}) {
    if (care_ & var_bit(v)) out.push_back({v, (value_ & var_bit(v)) == 0});
  }
  return out;
}

std::uint16_t ProductTerm::cover_mask() const noexcept {
  std::uint16_t mask = 0;
  for (unsigned k = 0; k < kInputStates; ++k) {
    if (covers(k)) mask |= static_cast<std::uint16_t>(1u << k);
  }
  return mask;
}

std::string ProductTerm::to_string() const {
  std::string out;
  for (const auto& lit : literals()) {
    if (lit.negated) out.push_back('~');
    out.push_back(var_name(lit.var));
  }
  return out;
}

SopExpr SopExpr::constant(bool value) {
  SopExpr e;
  e.constant_ = value;
  return e;
}

SopExpr SopExpr::from_terms(std::vector<ProductTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("a non-constant SOP needs at least one term");
  SopExpr e;
  e.terms_ = std::move(terms);
  return e;
}

std::size_t SopExpr::literal_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : terms_) n += t.literal_count();
  return n;
}

std::string format(const SopExpr& expr) {
  if (const auto c = expr.constant_value()) return *c ? "TRUE" : "FALSE";
  std::string out;
  for (const auto& t : expr.terms()) {
    if (!out.empty()) out += " + ";
    out += t.to_string();
  }
  return out;
}

SopExpr parse_sop(std::string_view text) { return Parser(text).parse(); }

std::string normalize_latex(std::string_view text) {
  static const std::regex annotation(R"(\(\s*\{\\sc\s+[^}]*\}\s*\))");
  static const std::regex line_break(R"(\\\\)");
  static const std::regex overline(R"(\\overline\s*\{\s*([A-Za-z])\s*\})");
  static const std::regex spacing(R"(\\(qquad|quad|,|;|:|!| ))");
  static const std::regex blanks(R"(\s+)");

  std::string s(text);
  s = std::regex_replace(s, annotation, " ");
  s = std::regex_replace(s, line_break, " ");
  s = std::regex_replace(s, overline, "~$1");
  s = std::regex_replace(s, spacing, " ");
  s.erase(std::remove(s.begin(), s.end(), '$'), s.end());
  s = std::regex_replace(s, blanks, " ");
  const auto first = s.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(' ');
  return s.substr(first, last - first + 1);
}

bool eval(const SopExpr& expr, unsigned input) noexcept {
  if (const auto c = expr.constant_value()) return *c;
  return std::any_of(expr.terms().begin(), expr.terms().end(),
                     [input](const ProductTerm& t) { return t.covers(input & 0xF); });
}

bool eval(const SopExpr& expr, bool a, bool b, bool c, bool d) noexcept {
  return eval(expr, input_index(a, b, c, d));
}

TruthTable to_truth_table(const SopExpr& expr) noexcept {
  if (const auto c = expr.constant_value()) return TruthTable::constant(*c);
  std::uint16_t bits = 0;
  for (const auto& t : expr.terms()) bits |= t.cover_mask();
  return TruthTable::from_id(bits);
}

SopExpr prime_implicants(TruthTable tt) {
  if (tt.is_false()) throw std::domain_error("the constant FALSE has no implicants");
  if (tt.is_true()) return SopExpr::constant(true);
  return SopExpr::from_terms(quine_mccluskey(tt.id()));
}

SopExpr minimize(TruthTable tt) {
  if (tt.is_false()) return SopExpr::constant(false);
  if (tt.is_true()) return SopExpr::constant(true);

  const auto primes = quine_mccluskey(tt.id());
  if (primes.size() > 64) throw std::logic_error("prime implicant chart exceeds 64 columns");
  const auto selections = petrick(primes, tt.id());

  auto literal_cost = [&](std::uint64_t sel) {
    std::size_t n = 0;
    for (auto rest = sel; rest != 0; rest &= rest - 1) {
      n += primes[static_cast<std::size_t>(std::countr_zero(rest))].literal_count();
    }
    return n;
  };
  auto text_of = [&](std::uint64_t sel) {
    std::vector<std::string> names;
    for (auto rest = sel; rest != 0; rest &= rest - 1) {
      names.push_back(primes[static_cast<std::size_t>(std::countr_zero(rest))].to_string());
    }
    return cover_text(std::move(names));
  };

  int best_terms = 65;
  std::size_t best_literals = 0;
  std::vector<std::uint64_t> tied;
  for (auto sel : selections) {
    const int terms = std::popcount(sel);
    const auto literals = literal_cost(sel);
    if (terms < best_terms || (terms == best_terms && literals < best_literals)) {
      best_terms = terms;
      best_literals = literals;
      tied.clear();
    }
    if (terms == best_terms && literals == best_literals) tied.push_back(sel);
  }

  std::uint64_t best = tied.front();
  if (tied.size() > 1) {
    std::string best_text = text_of(best);
    for (std::size_t i = 1; i < tied.size(); ++i) {
      auto t = text_of(tied[i]);
      if (t < best_text) {
        best_text = std::move(t);
        best = tied[i];
      }
    }
  }

  std::vector<ProductTerm> cover;
  for (auto rest = best; rest != 0; rest &= rest - 1) {
    cover.push_back(primes[static_cast<std::size_t>(std::countr_zero(rest))]);
  }
  std::sort(cover.begin(), cover.end(),
            [](const ProductTerm& a, const ProductTerm& b) { return a.to_string() < b.to_string(); });
  return SopExpr::from_terms(std::move(cover));
}

std::string canonical_key(TruthTable tt) {
  return std::to_string(function_id(tt)) + ":" + format(minimize(tt));
}

std::string canonicalize(const SopExpr& expr) { return canonical_key(to_truth_table(expr)); }

std::vector<SopExpr> run_on_readings(std::string_view normalized) {
  // Top-level '+' split.
  std::vector<std::string_view> segments;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= normalized.size(); ++i) {
    if (i == normalized.size() || normalized[i] == '+') {
      segments.push_back(normalized.substr(start, i - start));
      start = i + 1;
    }
  }

  // Per segment: either itself, or every valid two-way split.
  std::vector<std::vector<std::string>> options;
  bool any_split = false;
  for (auto seg : segments) {
    if (parses(seg)) {
      options.push_back({std::string(seg)});
      continue;
    }
    const auto factors = factor_spans(seg);
    if (!factors || factors->size() < 2) return {};
    std::vector<std::string> splits;
    for (std::size_t cut = 1; cut < factors->size(); ++cut) {
      const std::span<const Factor> all(*factors);
      const auto left = join_factors(seg, all.first(cut));
      const auto right = join_factors(seg, all.subspan(cut));
      if (parses(left) && parses(right)) splits.push_back(left + " + " + right);
    }
    if (splits.empty()) return {};
    options.push_back(std::move(splits));
    any_split = true;
  }
  if (!any_split) return {};

  std::vector<std::string> texts{""};
  for (const auto& opts : options) {
    std::vector<std::string> next;
    for (const auto& prefix : texts) {
      for (const auto& o : opts) next.push_back(prefix.empty() ? o : prefix + " + " + o);
    }
    texts = std::move(next);
  }

  std::vector<SopExpr> readings;
  for (const auto& t : texts) readings.push_back(parse_sop(t));
  std::stable_partition(readings.begin(), readings.end(), all_terms_prime);
  return readings;
}

ImportedRow import_latex_row(std::string_view source, std::size_t line) {
  ImportedRow row;
  row.line = line;
  row.source = std::string(source);
  row.normalized = normalize_latex(source);
  try {
    row.expr = parse_sop(row.normalized);
  } catch (const SopError& e) {
    row.error = e.what();
    row.readings = run_on_readings(row.normalized);
  }
  return row;
}

std::vector<ImportedRow> import_latex_list(std::string_view text) {
  std::vector<ImportedRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const auto line = text.substr(start, end - start);
    if (!normalize_latex(line).empty()) rows.push_back(import_latex_row(line, line_no));
    start = end + 1;
  }
  return rows;
}

std::vector<SopExpr> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SopError("cannot open " + path.string(), 0);
  std::vector<SopExpr> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_sop(line));
    } catch (const SopError& e) {
      throw SopError(path.string() + ":" + std::to_string(line_no) + ": " + e.what(), e.position());
    }
  }
  return out;
}

}  // namespace logicmine::sop
