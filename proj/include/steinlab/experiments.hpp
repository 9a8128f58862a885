#pragma once

// Declarative experiment runner: parses flat key=value configs, dispatches to
// the module operations, and emits deterministic JSON reports (timings kept
// out of the hashed payload so reruns byte-reproduce).

#include "steinlab/properties.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steinlab {

struct ExperimentConfig {
  std::string kind;                 // building-homology | phi-surjectivity |
                                    // pb-connectivity | folded-frame |
                                    // integral-image | coinvariants |
                                    // perm-combinatorics | property-suite
  std::string ring = "Z";
  int n = 2;
  long q = 2;
  int m = 2;                        // X building levels
  std::string labels;               // X labels, comma separated
  std::string building = "";        // tits | x | module | file (building-homology)
  std::string ideal = "unit";       // "unit", "zero", or generator list
  long bound = 2;                   // H / truncation / enumeration bound
  long search_bound = 10;           // H'
  long budget = 0;                  // summand search height (0 = ring default)
  std::uint64_t seed = 0;
  std::string apartment;            // X apartment spec "a,b;a,b" (empty = all)
  std::string suite;                // property suite name
  std::string in_file;              // complex file for building=file
  std::string format = "json";     // json | csv | dot

  std::string to_key_values() const;
  static ExperimentConfig from_key_values(const std::vector<std::pair<std::string, std::string>>& kv);
};

struct ReportCheck {
  std::string name;
  std::string status;  // PASS | FAIL | EVIDENCE
  std::string value;   // the numeric/textual claim, always tagged by status
};

struct Report {
  ExperimentConfig config;
  std::vector<ReportCheck> checks;
  bool truncated = false;
  long long elapsed_ms = 0;
  std::vector<std::pair<std::string, std::string>> artifacts;  // name -> content

  bool failed() const;
  // timings are excluded from the payload (and from the hash)
  std::string to_json(bool include_timings) const;
  std::string payload_hash() const;  // FNV-1a 64 over the timing-free JSON
};

Report run_experiment(const ExperimentConfig& cfg);

// One experiment per block; a `kind=` line starts a new block.
std::vector<ExperimentConfig> parse_config_file(const std::string& text);

// Runs every experiment (worker pool), merges reports in config order.
std::string run_config_and_render(const std::vector<ExperimentConfig>& cfgs, bool* any_fail,
                                  const std::string& out_dir);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace steinlab
