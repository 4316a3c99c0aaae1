#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logicmine/config.hpp"
#include "logicmine/pipeline.hpp"

namespace {

using logicmine::PipelineConfig;
namespace cli = logicmine::cli;

struct Flags {
  std::string config_file;
  std::string out_dir = "out";
  std::string thresholds = "20..175 step 5";
  std::string units = "mV";
  std::string baseline = "median";
  std::size_t min_peak_width = 1;
  std::size_t top_k = 16;
  std::size_t width = 500;
  std::size_t steps = 500;
  double p = 0.5;
  std::string seeds = "0";
  int png_level = logicmine::png::kDeflateLevel;
  std::size_t max_period = 64;
  std::size_t samples_per_state = 64;
  double peak_mv = 100.0;
  double noise_mv = 0.0;
};

// Flags first, then the config file on top.
PipelineConfig build_config(const Flags& f, bool thresholds_given) {
  PipelineConfig cfg;
  cfg.output_dir = f.out_dir;
  if (thresholds_given) {
    cfg.thresholds.clear();
    for (double t : logicmine::parse_number_list(f.thresholds)) cfg.thresholds.emplace_back(t);
  }
  cfg.schema.data_units = logicmine::ingest::parse_unit(f.units);
  if (f.baseline == "median") {
    cfg.peaks.baseline = logicmine::ingest::Baseline::median;
  } else if (f.baseline == "zero") {
    cfg.peaks.baseline = logicmine::ingest::Baseline::zero;
  } else {
    throw std::invalid_argument("baseline must be 'median' or 'zero'");
  }
  cfg.peaks.min_width = f.min_peak_width;
  cfg.top_k = f.top_k;
  cfg.width = f.width;
  cfg.steps = f.steps;
  cfg.p = f.p;
  cfg.seeds = logicmine::parse_seed_list(f.seeds);
  cfg.png_level = f.png_level;
  cfg.classifier.max_period = f.max_period;
  cfg.samples_per_state = f.samples_per_state;
  cfg.peak_amplitude_mv = f.peak_mv;
  cfg.noise_amplitude_mv = f.noise_mv;
  if (!f.config_file.empty()) cfg.apply(logicmine::KeyValueConfig::load(f.config_file));
  return cfg;
}

int run_with_input(const std::string& path, const std::function<int(std::istream&)>& body) {
  if (path.empty() || path == "-") return body(std::cin);
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return cli::kInputError;
  }
  return body(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean function mining from voltage recordings and cellular automaton complexity"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "logicmine 0.1.0");

  Flags f;
  app.add_option("--config", f.config_file, "key = value file; its entries override flags")
      ->check(CLI::ExistingFile);
  app.add_option("--out", f.out_dir, "Output directory")->capture_default_str();

  auto* mine = app.add_subcommand("mine", "Mine truth tables from recordings (CSV: t,ch1..ch7,sync)");
  std::vector<std::string> recordings;
  mine->add_option("recordings", recordings, "Recording CSV files, one per repeat")->required();
  auto* thr = mine->add_option("--thresholds", f.thresholds,
                               "Comma-separated band half-widths in mV")
                  ->capture_default_str();
  mine->add_option("--units", f.units, "Unit of the data channels (uV, mV, V)")->capture_default_str();
  mine->add_option("--baseline", f.baseline, "Per-window baseline: median or zero")
      ->capture_default_str();
  mine->add_option("--min-peak-width", f.min_peak_width, "Samples beyond the band needed for a peak")
      ->capture_default_str();
  mine->add_option("--top-k", f.top_k, "Rows in the summary table")->capture_default_str();

  auto* minimize = app.add_subcommand("minimize", "Canonical minimal SOP for ids or expressions");
  std::string minimize_input;
  bool with_ids = false;
  minimize->add_option("input", minimize_input, "Input file, one item per line (default stdin)");
  minimize->add_flag("--with-ids", with_ids, "Prefix each output line with the truth-table id");

  auto* simulate = app.add_subcommand("simulate", "Evolve the cellular automaton of a function");
  std::string function_spec;
  std::string format = "png";
  simulate->add_option("--function", function_spec, "Truth-table id, catalog label (F1..F16) or SOP")
      ->required();
  simulate->add_option("--width", f.width, "Cells (>= 5)")->capture_default_str();
  simulate->add_option("--steps", f.steps, "Iterations")->capture_default_str();
  simulate->add_option("--p", f.p, "Probability of an initial 1")->capture_default_str();
  simulate->add_option("--seed,--seeds", f.seeds, "Seed list, e.g. 0,3,7 or 0..19")
      ->capture_default_str();
  simulate->add_option("--format", format, "Image format: png, pgm or both")
      ->check(CLI::IsMember({"png", "pgm", "both"}))
      ->capture_default_str();
  simulate->add_option("--png-level", f.png_level, "Deflate level of the PNG encoder")
      ->capture_default_str();
  simulate->add_option("--max-period", f.max_period, "Longest cycle classified as class II")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "Join function counts with complexity reports");
  std::string distribution;
  std::vector<std::string> reports;
  std::vector<std::uint32_t> exclude;
  report->add_option("--distribution", distribution, "distribution.csv or catalog.csv")->required();
  report->add_option("--reports", reports, "Complexity JSON files");
  report->add_option("--exclude", exclude, "Function ids left out of the scatter");

  auto* synth = app.add_subcommand("synth", "Write synthetic recordings with known tables");
  cli::SynthRequest request;
  std::vector<std::string> tables;
  synth->add_option("--repeats", request.repeats, "Recordings to write")->capture_default_str();
  synth->add_option("--seed", request.seed, "Seed for tables and noise")->capture_default_str();
  synth->add_option("--tables", tables, "Seven function specs; random when omitted");
  synth->add_option("--samples-per-state", f.samples_per_state, "Samples in each state window")
      ->capture_default_str();
  synth->add_option("--peak", f.peak_mv, "Spike amplitude in mV")->capture_default_str();
  synth->add_option("--noise", f.noise_mv, "Uniform noise amplitude in mV")->capture_default_str();

  auto* catalog = app.add_subcommand("catalog", "Write the sixteen most frequent mined functions");

  auto* normalize = app.add_subcommand("normalize", "LaTeX expression list to the ASCII grammar");
  std::string normalize_input;
  bool add_constants = false;
  normalize->add_option("input", normalize_input, "Input file (default stdin)");
  normalize->add_flag("--add-constants", add_constants, "Append TRUE and FALSE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  PipelineConfig cfg;
  try {
    cfg = build_config(f, thr->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInputError;
  }

  if (*mine) {
    std::vector<std::filesystem::path> paths(recordings.begin(), recordings.end());
    return cli::cmd_mine(paths, cfg, std::cout, std::cerr);
  }
  if (*minimize) {
    return run_with_input(minimize_input, [&](std::istream& in) {
      return cli::cmd_minimize(in, std::cout, std::cerr, with_ids);
    });
  }
  if (*simulate) {
    const auto fmt = format == "pgm"    ? cli::ImageFormat::pgm
                     : format == "both" ? cli::ImageFormat::both
                                        : cli::ImageFormat::png;
    return cli::cmd_simulate(function_spec, cfg, fmt, std::cout, std::cerr);
  }
  if (*report) {
    std::vector<std::filesystem::path> paths(reports.begin(), reports.end());
    return cli::cmd_report(distribution, paths, exclude, cfg, std::cout, std::cerr);
  }
  if (*synth) {
    try {
      for (const auto& t : tables) request.tables.push_back(cli::resolve_function(t));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kInputError;
    }
    return cli::cmd_synth(request, cfg, std::cout, std::cerr);
  }
  if (*catalog) return cli::cmd_catalog(cfg, std::cout, std::cerr);
  if (*normalize) {
    return run_with_input(normalize_input, [&](std::istream& in) {
      return cli::cmd_normalize(in, std::cout, std::cerr, add_constants);
    });
  }
  return cli::kInputError;
}
