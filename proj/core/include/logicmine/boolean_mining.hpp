#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logicmine/signal_ingest.hpp"
#include "logicmine/truth_table.hpp"

namespace logicmine::mining {

/// Bit k is set iff reports[k] found at least one peak; throws
/// std::invalid_argument unless there are exactly 16 reports.
TruthTable extract_table(std::span<const ingest::PeakReport> reports);

struct MiningOptions {
  ingest::SegmentOptions segment{};
  ingest::PeakOptions peaks{};
};

/// Tables of one repeat, one per (channel, threshold) cell.
class MiningResult {
 public:
  MiningResult(std::size_t repeat_index, std::vector<ingest::ThresholdBand> bands);

  std::size_t repeat_index() const noexcept { return repeat_index_; }
  std::span<const ingest::ThresholdBand> bands() const noexcept { return bands_; }
  std::size_t band_count() const noexcept { return bands_.size(); }
  /// channels x bands, 224 for the standard sweep.
  std::size_t table_count() const noexcept { return tables_.size(); }

  TruthTable table(std::size_t channel, std::size_t band) const;
  void set_table(std::size_t channel, std::size_t band, TruthTable tt);

  bool operator==(const MiningResult&) const = default;

 private:
  std::size_t repeat_index_;
  std::vector<ingest::ThresholdBand> bands_;
  std::vector<TruthTable> tables_;  // channel-major
};

/// Segments the recording, then thresholds every window of every channel at
/// every band. Segmentation errors propagate as ingest::IngestError.
MiningResult mine(const ingest::Recording& rec, std::span<const ingest::ThresholdBand> bands,
                  std::size_t repeat_index = 0, const MiningOptions& options = {});

/// Where a mined table came from.
struct Provenance {
  std::size_t repeat = 0;
  std::size_t channel = 0;
  std::size_t threshold = 0;

  auto operator<=>(const Provenance&) const = default;
};

/// Multiset of mined function ids. Ids 0 (FALSE) and 65535 (TRUE) are
/// trivial but kept.
class FunctionDistribution {
 public:
  struct Entry {
    std::size_t count = 0;
    std::vector<Provenance> provenance;

    bool operator==(const Entry&) const = default;
  };

  void add(TruthTable tt, const Provenance& where);
  /// Adds bare counts, e.g. when reading an exported histogram.
  void add_count(std::uint32_t id, std::size_t count);
  void merge(const FunctionDistribution& other);

  std::size_t count(std::uint32_t id) const noexcept;
  std::size_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::size_t trivial_count() const noexcept;
  std::size_t nontrivial_count() const noexcept { return total_ - trivial_count(); }

  /// Ids by descending count, ties by ascending id.
  std::vector<std::pair<std::uint32_t, std::size_t>> top(std::size_t k,
                                                         bool include_trivial = false) const;

  const std::map<std::uint32_t, Entry>& entries() const noexcept { return entries_; }

  bool operator==(const FunctionDistribution&) const = default;

 private:
  std::map<std::uint32_t, Entry> entries_;
  std::size_t total_ = 0;
};

constexpr bool is_trivial_id(std::uint32_t id) noexcept { return id == 0 || id == 0xFFFF; }

FunctionDistribution tally(std::span<const MiningResult> results);

/// Per-run graph: a node is the 7-channel output string at an input state
/// (channel 1 leftmost); the 15 edges follow the count 0000 -> ... -> 1111.
struct StateGraph {
  struct Edge {
    std::size_t from = 0;  // index into nodes
    std::size_t to = 0;
    unsigned from_state = 0;
    unsigned to_state = 0;

    /// "0011->0100".
    std::string label() const;

    bool operator==(const Edge&) const = default;
  };

  /// Distinct output strings in order of first appearance.
  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  bool operator==(const StateGraph&) const = default;
};

StateGraph build_state_graph(const MiningResult& result, std::size_t threshold);

/// Graphviz digraph text.
std::string to_dot(const StateGraph& graph, const std::string& name);

/// "id,count,canonical_sop" rows sorted by id.
std::string distribution_csv(const FunctionDistribution& dist);
/// "id,count" rows sorted by id.
std::string histogram_csv(const FunctionDistribution& dist);
/// Reads either CSV layout back into counts; throws std::invalid_argument.
FunctionDistribution read_distribution_csv(std::string_view text);

}  // namespace logicmine::mining
