#pragma once

// O-submodules of O^n stored as integer lattices.  O^n is identified with
// Z^(2n) via the integral basis (1, omega) (Z^n over Z), so saturation,
// summand tests and intersections are all plain integer-lattice operations.

#include "steinlab/arith.hpp"
#include "steinlab/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace steinlab {

struct OVector {
  std::vector<RingElem> c;
  bool operator==(const OVector& o) const { return c == o.c; }
  bool operator<(const OVector& o) const { return c < o.c; }
};

std::string ovector_to_string(const OVector& v);
OVector parse_ovector(const std::string& s, int n);

int coord_width(const RingDesc& r);  // 2 for quadratic rings, 1 otherwise
Row embed_vector(const RingDesc& r, const OVector& v);
OVector unembed_row(const RingDesc& r, const Row& row);
Row omega_row(const RingDesc& r, const Row& row);  // coordinatewise mult by omega

struct ModuleLattice {
  RingDesc ring;
  int n = 0;   // ambient O-rank
  Mat basis;   // canonical HNF rows inside Z^(width*n)

  int zrank() const { return static_cast<int>(basis.size()); }
  int orank() const;
  bool is_zero() const { return basis.empty(); }
  std::string key() const;  // canonical serialization, usable as a map key
  bool operator==(const ModuleLattice& o) const;
};

ModuleLattice zero_module(const RingDesc& r, int n);
ModuleLattice full_module(const RingDesc& r, int n);

// Lattice generated by the rows (closed under omega when close_omega).
ModuleLattice module_from_rows(const RingDesc& r, int n, Mat rows, bool close_omega);

// O-span of the vectors followed by saturation: M ∩ (span ⊗ K).
ModuleLattice span_and_saturate(const RingDesc& r, int n, const std::vector<OVector>& vs);
// O-span without saturation.
ModuleLattice module_span(const RingDesc& r, int n, const std::vector<OVector>& vs);
ModuleLattice module_saturate(const ModuleLattice& m);

ModuleLattice module_sum(const ModuleLattice& a, const ModuleLattice& b);
ModuleLattice lattice_intersection(const ModuleLattice& a, const ModuleLattice& b);

bool module_contains_row(const ModuleLattice& m, const Row& row);
bool module_subset(const ModuleLattice& a, const ModuleLattice& b);

// True iff the quotient ambient/u is torsion-free (u must be contained in
// ambient; the inclusion's SNF invariant factors must all be 1).
bool is_summand(const ModuleLattice& u, const ModuleLattice& ambient);

// Steinitz class of a nonzero lattice: class of the ideal of r x r minors of
// an O-generator matrix (r = O-rank).
IdealClass steinitz_class(const ModuleLattice& u, const ClassGroup& cg);

Ideal coordinate_ideal(const RingDesc& r, const OVector& v);
bool is_unimodular(const RingDesc& r, const OVector& v);

// Vertex height for enumeration bounds: max |coordinate| over Z, total norm
// (sum of coordinate norms) over imaginary quadratic rings.
Int vector_height(const RingDesc& r, const OVector& v);

RingElem re_det(const RingDesc& r, const std::vector<std::vector<RingElem>>& m);

// The O-vectors the Z-basis rows decode to; they O-generate the lattice.
std::vector<OVector> module_generators(const ModuleLattice& m);

// Nonzero integer combinations of the lattice basis with coefficients in the
// box [-h, h]; shell h lists combinations of sup-norm exactly h, ordered
// lexicographically.
std::vector<Row> coeff_shell(int rank, long h);

struct SearchBudget {
  long max_coeff_height = 0;        // 0 means "derive from the ring"
  long long max_candidates = 2000000;
};
long default_height_budget(const RingDesc& r);

struct SummandSearchResult {
  std::optional<ModuleLattice> found;
  long long candidates_tried = 0;
  std::string outcome;  // "found" or "not found within budget"
};

// Search for a summand U with lower ⊊ U ⊊ upper, orank(U) = r and
// steinitz_class(U) = c.  Deterministic given (inputs, seed).
SummandSearchResult find_intermediate_summand(const ModuleLattice& lower,
                                              const ModuleLattice& upper,
                                              int r, IdealClass c,
                                              const ClassGroup& cg,
                                              const SearchBudget& budget,
                                              std::uint64_t seed);

// All distinct rank-1 summands arising as saturations of single lattice
// vectors with coefficient height <= bound; deterministic order.
std::vector<ModuleLattice> rank1_summands(const ModuleLattice& m, long bound);

}  // namespace steinlab
