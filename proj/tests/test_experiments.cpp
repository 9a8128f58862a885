#include "steinlab/experiments.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace steinlab;

TEST_CASE("config file parsing") {
  std::string text =
      "# comment\n"
      "kind=perm-combinatorics\n"
      "n = 6\n"
      "\n"
      "kind=coinvariants\n"
      "ring=F_2\n"
      "n=2\n";
  auto cfgs = parse_config_file(text);
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].kind == "perm-combinatorics");
  CHECK(cfgs[0].n == 6);
  CHECK(cfgs[1].ring == "F_2");
  CHECK_THROWS(parse_config_file("n=3\nbad line\n"));
  CHECK_THROWS(parse_config_file("mystery=1\nkind=x\n"));
}

TEST_CASE("reports byte-reproduce modulo timings") {
  ExperimentConfig cfg;
  cfg.kind = "perm-combinatorics";
  cfg.n = 6;
  Report a = run_experiment(cfg);
  Report b = run_experiment(cfg);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.payload_hash() == b.payload_hash());
  CHECK(!a.failed());
}

TEST_CASE("every check carries a status tag") {
  ExperimentConfig cfg;
  cfg.kind = "pb-connectivity";
  cfg.ring = "Z";
  cfg.n = 2;
  cfg.ideal = "5";
  cfg.bound = 3;
  cfg.search_bound = 10;
  Report rep = run_experiment(cfg);
  REQUIRE(!rep.checks.empty());
  for (const auto& c : rep.checks)
    CHECK((c.status == "PASS" || c.status == "FAIL" || c.status == "EVIDENCE"));
  // truncated enumeration claims are EVIDENCE
  CHECK(rep.truncated);
  CHECK(rep.checks[0].status == "EVIDENCE");
}

TEST_CASE("guard violations surface as FAIL with the violated limit") {
  ExperimentConfig cfg;
  cfg.kind = "building-homology";
  cfg.ring = "F_7";
  cfg.n = 5;  // out of the supported range
  Report rep = run_experiment(cfg);
  CHECK(rep.failed());
  REQUIRE(!rep.checks.empty());
  CHECK(rep.checks[0].name == "guard");
}

TEST_CASE("dot export for graphs") {
  ExperimentConfig cfg;
  cfg.kind = "pb-connectivity";
  cfg.ring = "Z";
  cfg.n = 2;
  cfg.ideal = "unit";
  cfg.bound = 2;
  cfg.format = "dot";
  Report rep = run_experiment(cfg);
  bool has_dot = false;
  for (const auto& [name, content] : rep.artifacts)
    if (name == "graph_dot" && content.find("graph pb {") == 0) has_dot = true;
  CHECK(has_dot);
}

TEST_CASE("unknown experiment kinds fail fast") {
  ExperimentConfig cfg;
  cfg.kind = "mystery";
  Report rep = run_experiment(cfg);
  CHECK(rep.failed());
}

TEST_CASE("csv artifacts") {
  ExperimentConfig cfg;
  cfg.kind = "pb-connectivity";
  cfg.ring = "Z";
  cfg.n = 2;
  cfg.bound = 2;
  cfg.format = "csv";
  Report rep = run_experiment(cfg);
  bool has_csv = false;
  for (const auto& [name, content] : rep.artifacts)
    if (name == "summary_csv" && content.rfind("bound,", 0) == 0) has_csv = true;
  CHECK(has_csv);
}

TEST_CASE("homology of an imported complex file") {
  // boundary of a triangle written in the line format
  std::string path = "imported_complex_test.txt";
  {
    std::ofstream f(path);
    f << "a b\nb c\na c\n";
  }
  ExperimentConfig cfg;
  cfg.kind = "building-homology";
  cfg.building = "file";
  cfg.in_file = path;
  Report rep = run_experiment(cfg);
  REQUIRE(!rep.checks.empty());
  CHECK(rep.checks[0].value == "0,1");  // a circle
  std::remove(path.c_str());
}

TEST_CASE("multi-experiment configs merge in order and report failure") {
  std::vector<ExperimentConfig> cfgs(2);
  cfgs[0].kind = "perm-combinatorics";
  cfgs[0].n = 5;
  cfgs[1].kind = "coinvariants";
  cfgs[1].ring = "F_2";
  cfgs[1].n = 2;
  bool fail = true;
  std::string merged = run_config_and_render(cfgs, &fail, "");
  CHECK(!fail);
  CHECK(merged.find("perm-combinatorics") < merged.find("coinvariants"));
}
