// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdg/cli/run.hpp"

using namespace sdg;
using namespace sdg::cli;

namespace {

struct ModelChoice {
  std::string model;
  std::string structure;
};

const std::vector<ModelChoice>& models() {
  static const std::vector<ModelChoice> m{{"heisenberg", "scalar"}, {"flat-control", "scalar"}, {"gauge", "gl2"}};
  return m;
}

RunConfig config_for(const ModelChoice& m, std::uint64_t seed) {
  RunConfig c;
  c.model = m.model;
  c.structure_group = m.structure;
  c.seed = seed;
  return c;
}

/// Runs `check` on `trials` independent samples for a model; throws the first failure with its trial index.
void repeat(const RunConfig& cfg, const std::string& id, std::size_t trials, void (*check)(Context&)) {
  const ExactSequence seq = make_model(cfg.model, cfg.structure_group, cfg.base_dim);
  for (std::size_t t = 0; t < trials; ++t) {
    Context ctx{cfg, seq, t, Sampler(Sampler::derive(cfg.seed, id, t), cfg.bound)};
    try {
      check(ctx);
    } catch (const std::exception& e) {
      throw PropertyFailure(id + " on " + model_label(cfg) + " trial " + std::to_string(t) + ": " + e.what());
    }
  }
}

void each_model(const std::string& id, std::size_t trials, void (*check)(Context&), std::uint64_t seed = 2026) {
  for (const auto& m : models()) repeat(config_for(m, seed), id, trials, check);
}

void criterion_1() {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("d" + std::to_string(k + 1));
    const auto alg = Algebra::create(names);
    Sampler rng(Sampler::derive(1, "weil", n));
    const WeilElement one(alg, 1), zero(alg);
    for (int t = 0; t < 1000; ++t) {
      const auto a = rng.weil(alg), b = rng.weil(alg), c = rng.weil(alg);
      require((a * b) * c == a * (b * c), "associativity");
      require(a * b == b * a, "commutativity");
      require(a * (b + c) == a * b + a * c, "distributivity");
      require((a + b) + c == a + (b + c) && a + b == b + a, "additive laws");
      require(a * one == a && a + zero == a && a - a == zero, "units");
      const auto u = rng.invertible_weil(alg);
      const auto inv = u.inverse();
      require(u * inv == one && inv * u == one, "two-sided inverse");
    }
  }
}

void criterion_2() { each_model("prop-1.1", 200, props::prop_1_1); }

void criterion_3() { each_model("thm-1.4", 100, props::thm_1_4); }

void criterion_4() { each_model("prop-1.5", 100, props::prop_1_5); }

void criterion_5() {
  each_model("prop-3.1", 100, props::prop_3_1);
  each_model("cor-3.2", 100, props::cor_3_2);
  each_model("prop-3.3", 100, props::prop_3_3);
  each_model("thm-3.4", 100, props::thm_3_4);
}

void criterion_6() { each_model("prop-4.1", 200, props::prop_4_1); }

void criterion_7() { each_model("prop-4.2", 100, props::prop_4_2); }

void criterion_8() {
  each_model("prop-4.5", 100, props::prop_4_5);
  each_model("thm-4.4", 100, props::thm_4_4);
  repeat(config_for({"heisenberg", "scalar"}, 1), "curvature-witness", 1, props::curvature_witness);
  repeat(config_for({"gauge", "scalar"}, 1), "curvature-witness", 1, props::curvature_witness);
}

void criterion_9() {
  const EdgeWord w = abstract_bianchi_word();
  require(reduce_word(w).empty() && reduce_word_from_right(w).empty(), "abstract word does not reduce to empty");
  each_model("bianchi-abstract", 100, props::bianchi_abstract);
  for (const auto& m : models()) {
    const RunConfig cfg = config_for(m, 2026);
    const ExactSequence seq = make_model(cfg.model, cfg.structure_group, cfg.base_dim);
    Context ctx{cfg, seq, 0, Sampler(Sampler::derive(cfg.seed, "bianchi-mutation", 0), cfg.bound)};
    bool failed = false;
    try {
      props::bianchi_mutation(ctx);
    } catch (const PropertyFailure& e) {
      failed = std::string(e.what()).find("numeric") != std::string::npos;
    }
    require(failed, "mutated cube did not fail the numeric identity on " + m.model);
  }
}

void criterion_10() { each_model("bianchi-classical", 100, props::bianchi_classical); }

void criterion_11() {
  auto argv_run = [](std::vector<std::string> args, std::vector<Property> extra = {}) {
    args.insert(args.begin(), "sdg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, std::move(extra));
    return std::make_pair(code, out.str());
  };
  const std::string cfg = std::string(SDG_CONFIG_DIR) + "/heisenberg.cfg";
  const auto a = argv_run({"--config", cfg, "--trials", "2", "--mutation"});
  const auto b = argv_run({"--config", cfg, "--trials", "2", "--mutation"});
  require(a.first == 0 && b.first == 0, "all-pass run did not exit 0");
  require(a.second == b.second, "two runs of one config differ");
  std::set<std::string> ids;
  std::istringstream in(a.second);
  for (std::string line; std::getline(in, line);) {
    const auto dash = line.find(" - ");
    if (dash == std::string::npos) continue;
    ids.insert(line.substr(dash + 3, line.find(' ', dash + 3) - dash - 3));
  }
  for (const char* id : {"prop-1.1", "prop-1.2", "prop-1.3", "thm-1.4", "prop-1.5", "prop-3.1", "cor-3.2", "prop-3.3",
                         "thm-3.4", "prop-4.1", "prop-4.2", "prop-4.3", "thm-4.4", "prop-4.5", "d-nabla-form",
                         "bianchi-abstract", "bianchi-classical", "face-curvature"})
    require(ids.count(id) == 1, std::string("identifier missing from an all run: ") + id);
  Property broken{"designed-failure", "algebra", [](Context&) { require(false, "designed failure"); }};
  require(argv_run({"--config", cfg, "--suite", "algebra", "--trials", "1"}, {broken}).first == 1,
          "a failing property did not exit 1");
  require(argv_run({"--config", "/nonexistent.cfg"}).first == 2, "missing config did not exit 2");
  require(argv_run({"--seed", "not-a-number"}).first == 2, "invalid seed did not exit 2");
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Weil algebra ring laws and inverses, 1000 triples for n = 1..4", 2, criterion_1},
      {2, "prop-1.1 additivity on D(2) and inverse, 200 tangents per model", 2, criterion_2},
      {3, "thm-1.4 antisymmetry, bilinearity over 6 scalars, Jacobi, 100 triples per model", 5, criterion_3},
      {4, "prop-1.5 strong-difference cocycle, 100 triples per model", 5, criterion_4},
      {5, "prop-3.1 / cor-3.2 / prop-3.3 / thm-3.4, 100 instances each per model", 5, criterion_5},
      {6, "prop-4.1 curvature word edges and kernel values, 200 per model", 5, criterion_6},
      {7, "prop-4.2 curvature is a 2-form, 100 per model", 5, criterion_7},
      {8, "prop-4.5 and thm-4.4, 100 per model, plus E13 and A = x1 dx2 witnesses", 10, criterion_8},
      {9, "abstract Bianchi: empty reduction, numeric id_O on 100 per model, mutation fails", 10, criterion_9},
      {10, "classical Bianchi d_nabla Omega = 0 with commutation lemmas, 100 per model", 30, criterion_10},
      {11, "CLI determinism, identifier coverage and exit codes", 30, criterion_11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && seconds >= c.limit_seconds)
      error = "runtime " + std::to_string(seconds) + " s exceeds the limit";
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s < %.0f s", seconds, c.limit_seconds);
    std::cout << (error.empty() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << timing
              << "]";
    if (!error.empty()) std::cout << " -- " << error;
    std::cout << "\n";
    if (!error.empty()) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
