#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sdg/cli/run.hpp"

using namespace sdg;
using namespace sdg::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, std::vector<Property> extra = {}) {
  args.insert(args.begin(), "sdg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, std::move(extra));
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(SDG_CONFIG_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("sdg_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::set<std::string> property_ids(const std::string& report) {
  std::set<std::string> ids;
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    const auto dash = line.find(" - ");
    if (dash == std::string::npos || !(line.starts_with("ok ") || line.starts_with("not ok "))) continue;
    const auto start = dash + 3;
    ids.insert(line.substr(start, line.find(' ', start) - start));
  }
  return ids;
}

}  // namespace

TEST(Config, MinimalConfigTakesDefaults) {
  const RunConfig c = parse_config("model = heisenberg\nseed = 1\n");
  EXPECT_EQ(c.model, "heisenberg");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.trials, 100u);
  EXPECT_EQ(c.suites, suite_names());
  EXPECT_EQ(c.connection_source, "random");
  EXPECT_FALSE(c.mutation);
}

TEST(Config, SectionsAndRationalBound) {
  const RunConfig c = parse_config(
      "# comment\n[model]\nname = gauge\nstructure_group = sl2\nbase_dim = 3\n"
      "[connection]\nsource = preset\nbound = 3/2  # inline\ndegree = 1\n"
      "[run]\nseed = 18446744073709551615\ntrials = 7\nsuites = bianchi, algebra\nmutation = true\n");
  EXPECT_EQ(c.model, "gauge");
  EXPECT_EQ(c.structure_group, "sl2");
  EXPECT_EQ(c.base_dim, 3u);
  EXPECT_EQ(c.connection_source, "preset");
  EXPECT_EQ(c.bound, Rational(3, 2));
  EXPECT_EQ(c.degree, 1u);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_EQ(c.trials, 7u);
  EXPECT_EQ(c.suites, (std::vector<std::string>{"algebra", "bianchi"}));
  EXPECT_TRUE(c.mutation);
}

TEST(Config, ErrorsCarryLineNumbersAndChoices) {
  auto message = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message("model = sphere\n").find("heisenberg, flat-control, gauge"), std::string::npos);
  EXPECT_NE(message("seed = 1\ncolour = red\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("seed = 1\ncolour = red\n").find("unknown key"), std::string::npos);
  EXPECT_NE(message("seed = -4\n").find("invalid seed"), std::string::npos);
  EXPECT_NE(message("seed = 99999999999999999999\n").find("out of range"), std::string::npos);
  EXPECT_NE(message("[model\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("[extras]\n").find("unknown section"), std::string::npos);
  EXPECT_NE(message("just words\n").find("key = value"), std::string::npos);
  EXPECT_NE(message("[connection]\nbound = 1.5\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("[connection]\nbound = -1\n").find("positive"), std::string::npos);
  EXPECT_NE(message("trials = 0\n").find("at least 1"), std::string::npos);
  EXPECT_NE(message("suites = tangent, optics\n").find("unknown suite"), std::string::npos);
  EXPECT_NE(message("[run]\nmodel = heisenberg\n").find("unknown key 'run.model'"), std::string::npos);
}

TEST(Config, ShippedConfigsParse) {
  for (const char* name : {"heisenberg.cfg", "flat-control.cfg", "gauge-gl2.cfg", "gauge-scalar-preset.cfg"})
    EXPECT_NO_THROW((void)load_config(config(name))) << name;
  EXPECT_EQ(load_config(config("gauge-scalar-preset.cfg")).bound, Rational(3, 2));
}

TEST(Cli, FlatControlAllSuitesPasses) {
  const Result r = run({"--config", config("flat-control.cfg"), "--trials", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.starts_with("TAP version 13\n"));
  EXPECT_NE(r.out.find("\n1.."), std::string::npos);
  EXPECT_EQ(r.out.find("not ok"), std::string::npos);
  EXPECT_NE(r.out.find("# summary total="), std::string::npos);
  EXPECT_NE(r.out.find("ok 1 - weil-ring model=flat-control seed=2 trial=0\n"), std::string::npos);
}

TEST(Cli, ReportsAreDeterministic) {
  const Result a = run({"--config", config("gauge-gl2.cfg"), "--trials", "2"});
  const Result b = run({"--config", config("gauge-gl2.cfg"), "--trials", "2"});
  EXPECT_EQ(a.out, b.out);
  const Result c = run({"--config", config("gauge-gl2.cfg"), "--trials", "2", "--seed", "8"});
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, CoversEveryStatement) {
  const Result r = run({"--config", config("heisenberg.cfg"), "--trials", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto ids = property_ids(r.out);
  for (const char* id : {"prop-1.1", "prop-1.2", "prop-1.3", "thm-1.4", "prop-1.5", "prop-3.1", "cor-3.2", "prop-3.3",
                         "thm-3.4", "prop-4.1", "prop-4.2", "prop-4.3", "thm-4.4", "prop-4.5", "d-nabla-form",
                         "bianchi-abstract", "bianchi-classical", "face-curvature"})
    EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Cli, SuiteSelectionAndOverrides) {
  const Result r = run({"--config", config("heisenberg.cfg"), "--suite", "lift", "--trials", "2", "--seed", "5"});
  EXPECT_EQ(r.code, 0);
  const auto ids = property_ids(r.out);
  EXPECT_EQ(ids, (std::set<std::string>{"lift-section", "prop-3.1", "cor-3.2", "prop-3.3", "thm-3.4"}));
  EXPECT_NE(r.out.find("seed=5 trial=1"), std::string::npos);
  EXPECT_NE(r.out.find("\n1..10\n"), std::string::npos);
}

TEST(Cli, MutationIsAnExpectedFailure) {
  const Result r = run({"--config", config("heisenberg.cfg"), "--suite", "bianchi", "--trials", "2", "--mutation"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("not ok 7 - bianchi-mutation model=heisenberg seed=1 trial=0 # TODO"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("xfail=2"), std::string::npos);
}

TEST(Cli, FailingPropertyExitsOne) {
  Property broken{"always-fails", "algebra", [](Context&) { require(false, "designed failure"); }};
  const Result r = run({"--config", config("heisenberg.cfg"), "--suite", "algebra", "--trials", "1"}, {broken});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not ok"), std::string::npos);
  EXPECT_NE(r.out.find("  # designed failure"), std::string::npos);
  EXPECT_NE(r.out.find("fail=1"), std::string::npos);
}

TEST(Cli, UnexpectedPassOfAnExpectedFailureExitsOne) {
  Property p{"should-fail", "algebra", [](Context&) {}, true};
  const Result r = run({"--config", config("heisenberg.cfg"), "--suite", "algebra", "--trials", "1"}, {p});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("xpass=1"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"--config", "/nonexistent/sdg.cfg"}).code, 2);
  EXPECT_EQ(run({"--config", write_temp("bad.cfg", "model = sphere\n")}).code, 2);
  const Result bad_key = run({"--config", write_temp("key.cfg", "seed = 1\nfoo = 2\n")});
  EXPECT_EQ(bad_key.code, 2);
  EXPECT_NE(bad_key.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"--seed", "abc"}).code, 2);
  EXPECT_EQ(run({"--suite", "optics"}).code, 2);
  EXPECT_EQ(run({"--trials", "0"}).code, 2);
  EXPECT_EQ(run({"--bogus"}).code, 2);
}

TEST(Cli, ListModels) {
  const Result r = run({"--list-models"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "heisenberg\nflat-control\ngauge structure_group=scalar|gl2|sl2 base_dim=1|2|3\n");
}
