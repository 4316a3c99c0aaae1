#include "logicmine/boolean_mining.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "logicmine/sop.hpp"

namespace logicmine::mining {
namespace {

std::string state_bits(unsigned k) {
  std::string s(4, '0');
  for (unsigned i = 0; i < 4; ++i) {
    if ((k >> (3 - i)) & 1u) s[i] = '1';
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_unsigned(std::string_view cell, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": not a non-negative integer: '" +
                                std::string(cell) + "'");
  }
  return value;
}

}  // namespace

TruthTable extract_table(std::span<const ingest::PeakReport> reports) {
  if (reports.size() != kInputStates) {
    throw std::invalid_argument("expected 16 peak reports, got " + std::to_string(reports.size()));
  }
  TruthTable tt;
  for (unsigned k = 0; k < kInputStates; ++k) tt = tt.with_bit(k, reports[k].count >= 1);
  return tt;
}

MiningResult::MiningResult(std::size_t repeat_index, std::vector<ingest::ThresholdBand> bands)
    : repeat_index_(repeat_index),
      bands_(std::move(bands)),
      tables_(ingest::kDataChannels * bands_.size()) {}

TruthTable MiningResult::table(std::size_t channel, std::size_t band) const {
  if (channel >= ingest::kDataChannels || band >= bands_.size()) {
    throw std::out_of_range("mining cell out of range");
  }
  return tables_[channel * bands_.size() + band];
}

void MiningResult::set_table(std::size_t channel, std::size_t band, TruthTable tt) {
  if (channel >= ingest::kDataChannels || band >= bands_.size()) {
    throw std::out_of_range("mining cell out of range");
  }
  tables_[channel * bands_.size() + band] = tt;
}

MiningResult mine(const ingest::Recording& rec, std::span<const ingest::ThresholdBand> bands,
                  std::size_t repeat_index, const MiningOptions& options) {
  const auto windows = ingest::segment_states(rec, options.segment);
  MiningResult result(repeat_index, {bands.begin(), bands.end()});
  std::vector<ingest::PeakReport> reports(kInputStates);
  for (std::size_t c = 0; c < ingest::kDataChannels; ++c) {
    for (std::size_t b = 0; b < bands.size(); ++b) {
      for (unsigned k = 0; k < kInputStates; ++k) {
        reports[k] = ingest::detect_peaks(windows[k], c, bands[b], options.peaks);
      }
      result.set_table(c, b, extract_table(reports));
    }
  }
  return result;
}

void FunctionDistribution::add(TruthTable tt, const Provenance& where) {
  auto& e = entries_[function_id(tt)];
  ++e.count;
  e.provenance.push_back(where);
  ++total_;
}

void FunctionDistribution::add_count(std::uint32_t id, std::size_t count) {
  if (id > 0xFFFF) throw std::invalid_argument("function id out of range: " + std::to_string(id));
  if (count == 0) return;
  entries_[id].count += count;
  total_ += count;
}

void FunctionDistribution::merge(const FunctionDistribution& other) {
  for (const auto& [id, e] : other.entries_) {
    auto& mine = entries_[id];
    mine.count += e.count;
    mine.provenance.insert(mine.provenance.end(), e.provenance.begin(), e.provenance.end());
  }
  total_ += other.total_;
}

std::size_t FunctionDistribution::count(std::uint32_t id) const noexcept {
  const auto it = entries_.find(id);
  return it == entries_.end() ? 0 : it->second.count;
}

std::size_t FunctionDistribution::trivial_count() const noexcept { return count(0) + count(0xFFFF); }

std::vector<std::pair<std::uint32_t, std::size_t>> FunctionDistribution::top(
    std::size_t k, bool include_trivial) const {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  for (const auto& [id, e] : entries_) {
    if (include_trivial || !is_trivial_id(id)) out.emplace_back(id, e.count);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

FunctionDistribution tally(std::span<const MiningResult> results) {
  FunctionDistribution dist;
  for (const auto& r : results) {
    for (std::size_t c = 0; c < ingest::kDataChannels; ++c) {
      for (std::size_t b = 0; b < r.band_count(); ++b) {
        dist.add(r.table(c, b), {r.repeat_index(), c, b});
      }
    }
  }
  return dist;
}

std::string StateGraph::Edge::label() const {
  return state_bits(from_state) + "->" + state_bits(to_state);
}

StateGraph build_state_graph(const MiningResult& result, std::size_t threshold) {
  if (threshold >= result.band_count()) throw std::out_of_range("threshold index out of range");
  StateGraph g;
  std::vector<std::size_t> node_of_state(kInputStates);
  for (unsigned k = 0; k < kInputStates; ++k) {
    std::string node(ingest::kDataChannels, '0');
    for (std::size_t c = 0; c < ingest::kDataChannels; ++c) {
      if (result.table(c, threshold).bit(k)) node[c] = '1';
    }
    const auto it = std::find(g.nodes.begin(), g.nodes.end(), node);
    node_of_state[k] = static_cast<std::size_t>(it - g.nodes.begin());
    if (it == g.nodes.end()) g.nodes.push_back(std::move(node));
  }
  for (unsigned k = 0; k + 1 < kInputStates; ++k) {
    g.edges.push_back({node_of_state[k], node_of_state[k + 1], k, k + 1});
  }
  return g;
}

std::string to_dot(const StateGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (const auto& n : graph.nodes) out << "  \"" << n << "\";\n";
  for (const auto& e : graph.edges) {
    out << "  \"" << graph.nodes[e.from] << "\" -> \"" << graph.nodes[e.to] << "\" [label=\""
        << e.label() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string distribution_csv(const FunctionDistribution& dist) {
  std::string out = "id,count,canonical_sop\n";
  for (const auto& [id, e] : dist.entries()) {
    out += std::to_string(id) + "," + std::to_string(e.count) + "," +
           sop::format(sop::minimize(TruthTable::from_id(static_cast<std::uint16_t>(id)))) + "\n";
  }
  return out;
}

std::string histogram_csv(const FunctionDistribution& dist) {
  std::string out = "id,count\n";
  for (const auto& [id, e] : dist.entries()) {
    out += std::to_string(id) + "," + std::to_string(e.count) + "\n";
  }
  return out;
}

FunctionDistribution read_distribution_csv(std::string_view text) {
  FunctionDistribution dist;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (!line.starts_with("id,count")) {
        throw std::invalid_argument("line 1: expected header 'id,count[,canonical_sop]'");
      }
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected id,count");
    }
    const auto c2 = line.find(',', c1 + 1);
    const auto id = parse_unsigned<std::uint32_t>(trim(line.substr(0, c1)), line_no);
    const auto count = parse_unsigned<std::size_t>(
        trim(line.substr(c1 + 1, c2 == std::string_view::npos ? line.npos : c2 - c1 - 1)), line_no);
    dist.add_count(id, count);
  }
  if (!header_seen) throw std::invalid_argument("empty distribution file");
  return dist;
}

}  // namespace logicmine::mining
