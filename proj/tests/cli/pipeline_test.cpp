#include "logicmine/pipeline.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include "logicmine/catalog.hpp"
#include "logicmine/complexity.hpp"
#include "logicmine/sop.hpp"

namespace logicmine::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("logicmine_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  PipelineConfig config(const std::string& sub) const {
    PipelineConfig cfg;
    cfg.output_dir = dir_ / sub;
    return cfg;
  }

  std::vector<fs::path> synth_repeats(std::size_t repeats, std::uint64_t seed) {
    SynthRequest req;
    req.repeats = repeats;
    req.seed = seed;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_synth(req, config("synth"), out, err), kOk) << err.str();
    std::vector<fs::path> files;
    for (std::size_t r = 0; r < repeats; ++r) {
      files.push_back(dir_ / "synth" / ("repeat_" + std::string(r < 10 ? "0" : "") + std::to_string(r) + ".csv"));
    }
    return files;
  }

  fs::path dir_;
};

TEST(ResolveFunction, Forms) {
  EXPECT_EQ(resolve_function("32767").id(), 32767);
  EXPECT_EQ(resolve_function("F9").id(), 65534);
  EXPECT_EQ(resolve_function("A~BCD").id(), 2048);
  EXPECT_EQ(resolve_function("$A\\overline{B}CD$").id(), 2048);
  EXPECT_THROW(resolve_function("70000"), std::invalid_argument);
  EXPECT_THROW(resolve_function("A + x"), std::invalid_argument);
  EXPECT_THROW(resolve_function(""), std::invalid_argument);
}

TEST(CmdMinimize, IdsAndExpressions) {
  std::istringstream in("32767\n0\n\n# note\nC~D + ~AB\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_minimize(in, out, err), kOk);
  EXPECT_EQ(out.str(), "~A + ~B + ~C + ~D\nFALSE\nC~D + ~AB\n");
}

TEST(CmdMinimize, ParseErrorNamesLine) {
  std::istringstream in("A\nA~A\nB\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_minimize(in, out, err), kInputError);
  EXPECT_NE(err.str().find("line 2:"), std::string::npos);
  EXPECT_EQ(out.str(), "A\nB\n");
}

TEST(CmdMinimize, CorpusGivesDistinctLines) {
  std::ifstream in(fs::path(LOGICMINE_DATA_DIR) / "mined_functions.sop");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_minimize(in, out, err, true), kOk) << err.str();
  std::istringstream lines(out.str());
  std::set<std::string> ids;
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    ids.insert(line.substr(0, line.find('\t')));
  }
  EXPECT_EQ(n, 470u);
  EXPECT_EQ(ids.size(), 470u);
}

TEST_F(Workspace, MineFourteenRepeats) {
  const auto files = synth_repeats(14, 1);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_mine(files, config("mine"), out, err), kOk) << err.str();
  EXPECT_NE(out.str().find("truth tables: 3136"), std::string::npos);
  EXPECT_NE(out.str().find("state graphs: 448"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "mine" / "graphs" / "r13_t31.dot"));
  std::size_t dots = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_ / "mine" / "graphs")) ++dots;
  EXPECT_EQ(dots, 448u);
  const auto dist = mining::read_distribution_csv(slurp(dir_ / "mine" / "distribution.csv"));
  EXPECT_EQ(dist.total(), 3136u);
}

TEST_F(Workspace, MineFlatRepeatListsOnlyFalse) {
  SynthRequest req;
  req.repeats = 1;
  req.tables.assign(7, TruthTable{});
  std::ostringstream sout, serr;
  ASSERT_EQ(cmd_synth(req, config("synth"), sout, serr), kOk);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_mine({dir_ / "synth" / "repeat_00.csv"}, config("mine"), out, err), kOk);
  const auto summary = out.str();
  EXPECT_NE(summary.find("FALSE n=224"), std::string::npos) << summary;
  EXPECT_NE(summary.find("1,224,0,yes,FALSE"), std::string::npos) << summary;
  EXPECT_EQ(summary.find("\n2,"), std::string::npos) << summary;
}

TEST_F(Workspace, MineCorruptFileFails) {
  auto files = synth_repeats(2, 3);
  const auto bad = dir_ / "bad.csv";
  std::ofstream(bad) << "ch1,ch2,ch3,ch4,ch5,ch6,ch7,sync\n1,2,3\n";
  files.insert(files.begin() + 1, bad);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_mine(files, config("mine"), out, err), kInputError);
  EXPECT_NE(err.str().find("bad.csv"), std::string::npos) << err.str();
  EXPECT_NE(out.str().find("truth tables: 448"), std::string::npos);
}

TEST_F(Workspace, MineIsIdempotent) {
  const auto files = synth_repeats(2, 4);
  std::ostringstream o1, e1, o2, e2;
  ASSERT_EQ(cmd_mine(files, config("a"), o1, e1), kOk);
  ASSERT_EQ(cmd_mine(files, config("b"), o2, e2), kOk);
  EXPECT_EQ(slurp(dir_ / "a" / "distribution.csv"), slurp(dir_ / "b" / "distribution.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "graphs" / "r01_t07.dot"), slurp(dir_ / "b" / "graphs" / "r01_t07.dot"));
  EXPECT_EQ(o1.str(), o2.str());
}

TEST_F(Workspace, SynthInjectedTablesAreRecovered) {
  const auto files = synth_repeats(3, 9);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_mine(files, config("mine"), out, err), kOk);
  std::istringstream injected(slurp(dir_ / "synth" / "injected.csv"));
  std::string line;
  std::getline(injected, line);
  EXPECT_EQ(line, "repeat,channel,id");
  const auto dist = mining::read_distribution_csv(slurp(dir_ / "mine" / "distribution.csv"));
  while (std::getline(injected, line)) {
    const auto id = static_cast<std::uint32_t>(std::stoul(line.substr(line.rfind(',') + 1)));
    EXPECT_GE(dist.count(id), 16u) << id;  // 16 bands below 100 mV
  }
}

TEST_F(Workspace, SimulateOr) {
  auto cfg = config("sim");
  cfg.seeds = {0, 1};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate("F9", cfg, ImageFormat::both, out, err), kOk) << err.str();
  for (std::uint64_t s : {0, 1}) {
    const auto stem = dir_ / "sim" / ("f65534_s" + std::to_string(s));
    const auto r = complexity::report_from_json(slurp(stem.string() + ".json"));
    EXPECT_EQ(r.attractor.homogeneous_value, std::optional<bool>(true));
    EXPECT_TRUE(fs::exists(stem.string() + ".png"));
    EXPECT_TRUE(fs::exists(stem.string() + ".pgm"));
  }
}

TEST_F(Workspace, SimulateWidthTooSmall) {
  auto cfg = config("sim");
  cfg.width = 4;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate("1", cfg, ImageFormat::png, out, err), kInputError);
  EXPECT_NE(err.str().find("width too small"), std::string::npos);
}

TEST_F(Workspace, SimulateInvalidSpec) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate("Q+", config("sim"), ImageFormat::png, out, err), kInputError);
}

TEST_F(Workspace, SimulateDeterministic) {
  auto a = config("a");
  auto b = config("b");
  a.width = b.width = 120;
  a.steps = b.steps = 80;
  a.seeds = b.seeds = {7};
  std::ostringstream o, e;
  ASSERT_EQ(cmd_simulate("F13", a, ImageFormat::png, o, e), kOk);
  ASSERT_EQ(cmd_simulate("F13", b, ImageFormat::png, o, e), kOk);
  EXPECT_EQ(slurp(dir_ / "a" / "f32746_s7.png"), slurp(dir_ / "b" / "f32746_s7.png"));
  EXPECT_EQ(slurp(dir_ / "a" / "f32746_s7.json"), slurp(dir_ / "b" / "f32746_s7.json"));
}

TEST_F(Workspace, ReportScatterOverTwelveFunctions) {
  std::ostringstream o, e;
  ASSERT_EQ(cmd_catalog(config("cat"), o, e), kOk);
  auto sim = config("sim");
  sim.width = 100;
  sim.steps = 100;
  std::vector<fs::path> reports;
  std::vector<std::uint32_t> exclude;
  for (const auto& entry : catalog::top_functions()) {
    const auto id = catalog::table_of(entry).id();
    ASSERT_EQ(cmd_simulate(std::to_string(id), sim, ImageFormat::png, o, e), kOk);
    reports.push_back(dir_ / "sim" / ("f" + std::to_string(id) + "_s0.json"));
    if (catalog::omitted_from_scatter(entry)) exclude.push_back(id);
  }
  std::ostringstream out, err;
  ASSERT_EQ(cmd_report(dir_ / "cat" / "catalog.csv", reports, exclude, config("rep"), out, err), kOk)
      << err.str();
  std::istringstream scatter(slurp(dir_ / "rep" / "scatter.csv"));
  std::string line;
  std::getline(scatter, line);
  EXPECT_EQ(line, "id,count,png_bytes,lz76,class");
  std::size_t rows = 0;
  while (std::getline(scatter, line)) ++rows;
  EXPECT_EQ(rows, 12u);
  EXPECT_NE(out.str().find("pearson r"), std::string::npos);
}

TEST_F(Workspace, ReportErrors) {
  std::ostringstream o, e;
  ASSERT_EQ(cmd_catalog(config("cat"), o, e), kOk);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_report(dir_ / "cat" / "catalog.csv", {}, {}, config("rep"), out, err), kInputError);
  EXPECT_NE(err.str().find("nothing to join"), std::string::npos);

  auto sim = config("sim");
  sim.width = 50;
  sim.steps = 20;
  ASSERT_EQ(cmd_simulate("F3", sim, ImageFormat::png, o, e), kOk);
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_report(dir_ / "cat" / "catalog.csv", {dir_ / "sim" / "f17470_s0.json"}, {},
                       config("rep"), out2, err2),
            kInputError);
  EXPECT_NE(err2.str().find("≥ 2 points required"), std::string::npos) << err2.str();
}

TEST_F(Workspace, ReportListsJoinMismatches) {
  std::ostringstream o, e;
  ASSERT_EQ(cmd_catalog(config("cat"), o, e), kOk);
  auto sim = config("sim");
  sim.width = 50;
  sim.steps = 20;
  for (const char* f : {"F3", "F4", "12345"}) ASSERT_EQ(cmd_simulate(f, sim, ImageFormat::png, o, e), kOk);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_report(dir_ / "cat" / "catalog.csv",
                       {dir_ / "sim" / "f17470_s0.json", dir_ / "sim" / "f32750_s0.json",
                        dir_ / "sim" / "f12345_s0.json"},
                       {}, config("rep"), out, err),
            kInputError);
  EXPECT_NE(err.str().find("12345"), std::string::npos);
}

TEST(CmdNormalize, LatexLines) {
  std::istringstream in("$A + B$\n\n$(A  \\overline{D}) + (D  \\overline{A})\\\\\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_normalize(in, out, err, true), kOk);
  EXPECT_EQ(out.str(), "A + B\nA~D + ~AD\nTRUE\nFALSE\n");
}

TEST(CmdNormalize, FlaggedRowReported) {
  std::istringstream in("$A + \\overline{C}D\\overline{A}BC$\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_normalize(in, out, err, false), kInputError);
  EXPECT_NE(err.str().find("candidate readings"), std::string::npos);
}

TEST(FormatSummary, Shape) {
  mining::FunctionDistribution d;
  d.add_count(0, 238);
  d.add_count(65535, 237);
  d.add_count(32767, 145);
  const auto s = format_summary(d, 14, 448, 2);
  EXPECT_NE(s.find("FALSE n=238"), std::string::npos);
  EXPECT_NE(s.find("TRUE n=237"), std::string::npos);
  EXPECT_NE(s.find("1,238,0,yes,FALSE"), std::string::npos);
  EXPECT_EQ(s.find("32767"), std::string::npos);
}

// The executable itself: exit codes and flag handling.
int run(const std::string& args) {
  const std::string cmd = std::string(LOGICMINE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(Executable, ExitCodes) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("simulate --help"), 0);
  EXPECT_EQ(run("frobnicate"), 1);
  const auto out = fs::temp_directory_path() / "logicmine_exe";
  EXPECT_EQ(run("simulate --function 1 --width 4 --out " + out.string()), 1);
  EXPECT_EQ(run("simulate --function F6 --width 40 --steps 30 --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "f2048_s0.png"));
  fs::remove_all(out);
}

TEST(Executable, ConfigOverridesFlags) {
  const auto dir = fs::temp_directory_path() / "logicmine_cfg";
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "width = 33\nsteps = 10\nseeds = 4\n";
  EXPECT_EQ(run("simulate --function F9 --width 400 --config " + (dir / "run.cfg").string() +
                " --out " + dir.string()),
            0);
  const auto r = complexity::report_from_json(slurp(dir / "f65534_s4.json"));
  EXPECT_EQ(r.width, 33u);
  EXPECT_EQ(r.steps, 10u);
  fs::remove_all(dir);
}

TEST(Executable, HelpDocumentsDefaults) {
  const auto path = fs::temp_directory_path() / "logicmine_help.txt";
  ASSERT_EQ(std::system((std::string(LOGICMINE_CLI) + " mine --help > " + path.string()).c_str()), 0);
  const auto mine = slurp(path);
  EXPECT_NE(mine.find("20..175"), std::string::npos);
  ASSERT_EQ(std::system((std::string(LOGICMINE_CLI) + " simulate --help > " + path.string()).c_str()), 0);
  const auto sim = slurp(path);
  EXPECT_NE(sim.find("[500]"), std::string::npos);
  EXPECT_NE(sim.find("[0.5]"), std::string::npos);
  fs::remove(path);
}

}  // namespace
}  // namespace logicmine::cli
