#pragma once

// Property suites: randomized (seeded, hand-rolled generators) and exhaustive
// checks of the per-module invariants.  Each suite returns one CheckResult
// per named property; suites are reused by the unit tests, the acceptance
// runner and the `run` subcommand.

#include "steinlab/steinberg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steinlab {

std::vector<CheckResult> arith_properties(std::uint64_t seed);
std::vector<CheckResult> lattice_properties(std::uint64_t seed);
std::vector<CheckResult> topo_properties(std::uint64_t seed);
std::vector<CheckResult> building_properties(std::uint64_t seed);
std::vector<CheckResult> steinberg_properties(std::uint64_t seed);
std::vector<CheckResult> partial_bases_properties(std::uint64_t seed);

std::vector<CheckResult> run_property_suite(const std::string& name, std::uint64_t seed);
std::vector<std::string> property_suite_names();

// Dense textbook Smith normal form; the reference oracle for the sparse
// implementation.
std::vector<Int> dense_snf_reference(Mat m);

}  // namespace steinlab
