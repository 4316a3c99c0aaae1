#include "logicmine/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "logicmine/ca.hpp"
#include "logicmine/catalog.hpp"
#include "logicmine/complexity.hpp"
#include "logicmine/random.hpp"
#include "logicmine/signal_ingest.hpp"
#include "logicmine/sop.hpp"

namespace logicmine::cli {
namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string two_digits(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu", n);
  return buf;
}

std::string stem_for(std::uint32_t id, std::uint64_t seed) {
  return "f" + std::to_string(id) + "_s" + std::to_string(seed);
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// Runs a command body, mapping escaping exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

std::optional<std::uint32_t> parse_id(std::string_view text) {
  std::uint32_t id = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return id;
}

std::string format_double(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

TruthTable resolve_function(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw std::invalid_argument("empty function spec");
  if (const auto id = parse_id(spec)) {
    if (*id > 0xFFFF) throw std::invalid_argument("function id out of range: " + std::string(spec));
    return TruthTable::from_id(static_cast<std::uint16_t>(*id));
  }
  if ((spec[0] == 'F' || spec[0] == 'f') && spec.size() > 1 && parse_id(spec.substr(1))) {
    return catalog::table_of(catalog::entry(spec));
  }
  try {
    const auto text = spec.find('\\') != spec.npos ? sop::normalize_latex(spec) : std::string(spec);
    return sop::to_truth_table(sop::parse_sop(text));
  } catch (const sop::SopError& e) {
    throw std::invalid_argument("invalid function spec '" + std::string(spec) + "': " + e.what());
  }
}

std::string format_summary(const mining::FunctionDistribution& dist, std::size_t repeats,
                           std::size_t graphs, std::size_t top_k) {
  std::ostringstream s;
  s << "repeats: " << repeats << "\n";
  s << "truth tables: " << dist.total() << "\n";
  s << "state graphs: " << graphs << "\n";
  s << "distinct functions: " << dist.distinct() << "\n";
  s << "FALSE n=" << dist.count(0) << "\n";
  s << "TRUE n=" << dist.count(0xFFFF) << "\n";
  s << "non-trivial tables: " << dist.nontrivial_count() << "\n";
  s << "top " << top_k << " functions:\n";
  s << "rank,count,id,trivial,sop\n";
  std::size_t rank = 0;
  for (const auto& [id, count] : dist.top(top_k, true)) {
    s << ++rank << "," << count << "," << id << "," << (mining::is_trivial_id(id) ? "yes" : "no")
      << "," << sop::format(sop::minimize(TruthTable::from_id(static_cast<std::uint16_t>(id))))
      << "\n";
  }
  return s.str();
}

int cmd_mine(const std::vector<fs::path>& recordings, const PipelineConfig& config,
             std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (recordings.empty()) throw std::invalid_argument("no recordings given");

    mining::MiningOptions options;
    options.segment = ingest::SegmentOptions::from_schema(config.schema);
    options.peaks = config.peaks;

    std::vector<mining::MiningResult> results;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < recordings.size(); ++i) {
      try {
        const auto rec = ingest::load_recording(recordings[i], config.schema);
        results.push_back(mining::mine(rec, config.thresholds, i, options));
      } catch (const ingest::IngestError& e) {
        err << "error: " << e.what() << "\n";
        ++failures;
      }
    }

    const auto dist = mining::tally(results);
    const auto per_repeat = ingest::kDataChannels * config.thresholds.size();
    if (dist.total() != results.size() * per_repeat) {
      throw InvariantViolation("tally total does not match channels x thresholds x repeats");
    }

    const auto graph_dir = config.output_dir / "graphs";
    fs::create_directories(graph_dir);
    std::size_t graphs = 0;
    for (const auto& r : results) {
      for (std::size_t b = 0; b < r.band_count(); ++b) {
        const auto g = mining::build_state_graph(r, b);
        if (g.edges.size() != kInputStates - 1) throw InvariantViolation("state graph edge count");
        const auto name = "r" + two_digits(r.repeat_index()) + "_t" + two_digits(b);
        write_file(graph_dir / (name + ".dot"), mining::to_dot(g, name));
        ++graphs;
      }
    }

    const auto summary = format_summary(dist, results.size(), graphs, config.top_k);
    write_file(config.output_dir / "distribution.csv", mining::distribution_csv(dist));
    write_file(config.output_dir / "histogram.csv", mining::histogram_csv(dist));
    write_file(config.output_dir / "summary.txt", summary);
    out << summary;
    if (failures > 0) err << failures << " of " << recordings.size() << " recordings failed\n";
    return failures == 0 ? kOk : kInputError;
  });
}

int cmd_minimize(std::istream& in, std::ostream& out, std::ostream& err, bool with_ids) {
  return guarded(err, [&] {
    std::string line;
    std::size_t line_no = 0;
    std::size_t failures = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto text = trim(line);
      if (text.empty() || text.front() == '#') continue;
      try {
        TruthTable tt;
        if (const auto id = parse_id(text)) {
          if (*id > 0xFFFF) throw std::invalid_argument("function id out of range");
          tt = TruthTable::from_id(static_cast<std::uint16_t>(*id));
        } else {
          const auto normalized =
              text.find('\\') != text.npos ? sop::normalize_latex(text) : std::string(text);
          tt = sop::to_truth_table(sop::parse_sop(normalized));
        }
        if (with_ids) out << function_id(tt) << "\t";
        out << sop::format(sop::minimize(tt)) << "\n";
      } catch (const std::exception& e) {
        err << "line " << line_no << ": " << e.what() << "\n";
        ++failures;
      }
    }
    return failures == 0 ? kOk : kInputError;
  });
}

int cmd_simulate(std::string_view function_spec, const PipelineConfig& config, ImageFormat format,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const auto tt = resolve_function(function_spec);
    const auto rule = ca::rule_from_function(tt);
    fs::create_directories(config.output_dir);
    for (const auto seed : config.seeds) {
      const auto init = ca::random_config(config.width, config.p, seed);
      const auto st = ca::evolve(init, rule, config.steps);
      const auto report =
          complexity::analyze(function_id(tt), seed, st, config.classifier, config.png_level);
      const auto stem = stem_for(function_id(tt), seed);
      if (format != ImageFormat::pgm) {
        write_file(config.output_dir / (stem + ".png"), complexity::render_png(st, config.png_level));
      }
      if (format != ImageFormat::png) write_file(config.output_dir / (stem + ".pgm"), ca::to_pgm(st));
      write_file(config.output_dir / (stem + ".json"), complexity::to_json(report));
      out << stem << ": class=" << complexity::to_string(report.wolfram_class)
          << " attractor=" << ca::to_string(report.attractor.kind)
          << " transient=" << report.attractor.transient_length
          << " period=" << report.attractor.period;
      if (report.attractor.homogeneous_value) {
        out << " homogeneous=" << (*report.attractor.homogeneous_value ? 1 : 0);
      }
      out << " png_bytes=" << report.png_bytes << " lz76=" << report.lz76_factors
          << " normalized_lz76=" << format_double(report.normalized_lz76, 4) << "\n";
    }
    return kOk;
  });
}

int cmd_report(const fs::path& distribution_csv, const std::vector<fs::path>& complexity_reports,
               const std::vector<std::uint32_t>& exclude_ids, const PipelineConfig& config,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto dist = mining::read_distribution_csv(read_file(distribution_csv));

    struct Accumulated {
      std::size_t runs = 0;
      double png_bytes = 0.0;
      double lz = 0.0;
      std::map<complexity::WolframClass, std::size_t> classes;
    };
    std::map<std::uint32_t, Accumulated> by_id;
    for (const auto& path : complexity_reports) {
      const auto r = complexity::report_from_json(read_file(path));
      auto& acc = by_id[r.function_id];
      ++acc.runs;
      acc.png_bytes += static_cast<double>(r.png_bytes);
      acc.lz += r.normalized_lz76;
      ++acc.classes[r.wolfram_class];
    }
    for (auto id : exclude_ids) by_id.erase(id);
    if (by_id.empty()) throw std::invalid_argument("nothing to join");

    std::vector<std::uint32_t> missing;
    std::string scatter = "id,count,png_bytes,lz76,class\n";
    std::vector<std::pair<double, double>> points;
    for (const auto& [id, acc] : by_id) {
      const auto count = dist.count(id);
      if (count == 0) {
        missing.push_back(id);
        continue;
      }
      const double runs = static_cast<double>(acc.runs);
      const auto majority = std::max_element(
          acc.classes.begin(), acc.classes.end(),
          [](const auto& a, const auto& b) { return a.second < b.second; });
      const double lz = acc.lz / runs;
      scatter += std::to_string(id) + "," + std::to_string(count) + "," +
                 format_double(acc.png_bytes / runs, 1) + "," + format_double(lz, 6) + "," +
                 std::string(complexity::to_string(majority->first)) + "\n";
      points.emplace_back(static_cast<double>(count), lz);
    }

    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "histogram.csv", mining::histogram_csv(dist));
    write_file(config.output_dir / "scatter.csv", scatter);

    for (auto id : missing) err << "join mismatch: function " << id << " has no count\n";
    if (points.size() < 2) {
      throw std::invalid_argument("≥ 2 points required for a correlation, joined " +
                                  std::to_string(points.size()));
    }
    const auto corr = complexity::correlation(points);
    std::ostringstream summary;
    summary << "joined functions: " << points.size() << "\n";
    summary << "excluded ids: " << exclude_ids.size() << "\n";
    summary << "join mismatches: " << missing.size() << "\n";
    summary << "pearson r (count vs normalized LZ76): " << format_double(corr.pearson_r, 4)
            << (corr.degenerate ? " (degenerate)" : "") << "\n";
    write_file(config.output_dir / "report.txt", summary.str());
    out << summary.str();
    return missing.empty() ? kOk : kInputError;
  });
}

int cmd_synth(const SynthRequest& request, const PipelineConfig& config, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (!request.tables.empty() && request.tables.size() != ingest::kDataChannels) {
      throw std::invalid_argument("expected 7 tables, got " + std::to_string(request.tables.size()));
    }
    fs::create_directories(config.output_dir);
    Engine engine(request.seed);
    std::string injected = "repeat,channel,id\n";
    for (std::size_t r = 0; r < request.repeats; ++r) {
      ingest::SynthesisParams params;
      for (std::size_t c = 0; c < ingest::kDataChannels; ++c) {
        params.tables[c] = request.tables.empty()
                               ? TruthTable::from_id(static_cast<std::uint16_t>(engine() & 0xFFFF))
                               : request.tables[c];
        injected += std::to_string(r) + "," + std::to_string(c) + "," +
                    std::to_string(function_id(params.tables[c])) + "\n";
      }
      params.peak_amplitude_mv = config.peak_amplitude_mv;
      params.noise_amplitude_mv = config.noise_amplitude_mv;
      params.samples_per_state = config.samples_per_state;
      params.sync_amplitude_mv = config.schema.sync_amplitude_mv;
      params.sample_period = config.schema.sample_period;
      params.seed = engine();
      auto rec = ingest::synthesize_recording(params);
      // Files are written in the schema's units so they load back unchanged.
      const double data_scale = ingest::millivolts_per(config.schema.data_units);
      const double sync_scale = ingest::millivolts_per(config.schema.sync_units);
      for (auto& ch : rec.channels) {
        for (auto& v : ch) v /= data_scale;
      }
      for (auto& v : rec.sync) v /= sync_scale;
      const auto path = config.output_dir / ("repeat_" + two_digits(r) + ".csv");
      ingest::save_recording(path, rec);
      out << path.string() << "\n";
    }
    write_file(config.output_dir / "injected.csv", injected);
    return kOk;
  });
}

int cmd_catalog(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    mining::FunctionDistribution dist;
    for (const auto& e : catalog::top_functions()) {
      const auto tt = catalog::table_of(e);
      dist.add_count(function_id(tt), static_cast<std::size_t>(e.count));
      out << "F" << e.index << "\t" << function_id(tt) << "\t" << e.count << "\t"
          << sop::format(sop::minimize(tt));
      if (!catalog::import_entry(e).ok()) out << "\t(run-on row, first reading)";
      out << "\n";
    }
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "catalog.csv", mining::distribution_csv(dist));
    return kOk;
  });
}

int cmd_normalize(std::istream& in, std::ostream& out, std::ostream& err, bool add_constants) {
  return guarded(err, [&] {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::size_t failures = 0;
    for (const auto& row : sop::import_latex_list(buf.str())) {
      if (row.ok()) {
        out << sop::format(*row.expr) << "\n";
        continue;
      }
      ++failures;
      err << "line " << row.line << ": " << row.error;
      if (row.flagged()) {
        err << "; candidate readings:";
        for (const auto& r : row.readings) err << " [" << sop::format(r) << "]";
      }
      err << "\n";
    }
    if (add_constants) out << "TRUE\nFALSE\n";
    return failures == 0 ? kOk : kInputError;
  });
}

}  // namespace logicmine::cli
