#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logicmine/boolean_mining.hpp"
#include "logicmine/config.hpp"
#include "logicmine/truth_table.hpp"

// Command implementations behind the `logicmine` executable. Each returns a
// process exit code and writes its artifacts under config.output_dir:
//
//   mine      distribution.csv, histogram.csv, summary.txt,
//             graphs/r<RR>_t<TT>.dot (repeat and threshold index, 2 digits)
//   simulate  f<id>_s<seed>.png, f<id>_s<seed>.json [, f<id>_s<seed>.pgm]
//   report    histogram.csv, scatter.csv, report.txt
//   synth     repeat_<RR>.csv, injected.csv
//   catalog   catalog.csv
namespace logicmine::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInternalError = 2 };

/// Broken internal invariant; maps to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Accepts a decimal id (0..65535), a catalog label ("F13"), or an SOP
/// expression (ASCII grammar or LaTeX). Throws std::invalid_argument.
TruthTable resolve_function(std::string_view spec);

/// Summary text: totals, trivial split and the top-k table.
std::string format_summary(const mining::FunctionDistribution& dist, std::size_t repeats,
                           std::size_t graphs, std::size_t top_k);

int cmd_mine(const std::vector<std::filesystem::path>& recordings, const PipelineConfig& config,
             std::ostream& out, std::ostream& err);

/// One canonical minimal SOP per input line (ids or expressions); with
/// `with_ids` each line is prefixed by "<id>\t".
int cmd_minimize(std::istream& in, std::ostream& out, std::ostream& err, bool with_ids = false);

enum class ImageFormat { png, pgm, both };

int cmd_simulate(std::string_view function_spec, const PipelineConfig& config, ImageFormat format,
                 std::ostream& out, std::ostream& err);

int cmd_report(const std::filesystem::path& distribution_csv,
               const std::vector<std::filesystem::path>& complexity_reports,
               const std::vector<std::uint32_t>& exclude_ids, const PipelineConfig& config,
               std::ostream& out, std::ostream& err);

struct SynthRequest {
  std::size_t repeats = 14;
  std::uint64_t seed = 0;
  /// Same 7 tables for every repeat; drawn from `seed` per repeat when empty.
  std::vector<TruthTable> tables;
};

int cmd_synth(const SynthRequest& request, const PipelineConfig& config, std::ostream& out,
              std::ostream& err);

/// Writes the 16 catalog functions with their counts as catalog.csv
/// (distribution layout).
int cmd_catalog(const PipelineConfig& config, std::ostream& out, std::ostream& err);

/// LaTeX expression list to ASCII corpus lines. Rows with run-together
/// products are reported on `err` with their candidate readings and skipped;
/// `add_constants` appends TRUE and FALSE.
int cmd_normalize(std::istream& in, std::ostream& out, std::ostream& err, bool add_constants);

}  // namespace logicmine::cli
