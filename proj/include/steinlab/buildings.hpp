#pragma once

// Tits buildings over prime fields, truncated summand posets over modules,
// the join-of-points building X_m(T), frames and apartment chains.

#include "steinlab/arith.hpp"
#include "steinlab/lattices.hpp"
#include "steinlab/topo.hpp"

#include <string>
#include <vector>

namespace steinlab {

// One poset container for the three building flavours.  Elements are sorted
// by (height, key), so vertex ids of the order complex increase along flags.
struct BuildingPoset {
  enum class Mode { Field, Module, X };
  Mode mode = Mode::Field;

  std::vector<std::string> keys;
  std::vector<int> heights;
  Poset poset;  // strict order = containment (resp. the X relation)

  // field mode payload: subspaces as sorted lists of nonzero point codes
  long q = 0;
  int n = 0;
  std::vector<std::vector<int>> subspaces;

  // module mode payload
  std::vector<ModuleLattice> lattices;
  bool truncated = false;
  long trunc_bound = 0;

  // X mode payload: (level 1..m, label index)
  int m = 0;
  std::vector<std::string> tlabels;
  std::vector<std::pair<int, int>> xnodes;

  int index_of(const std::string& key) const;  // -1 when absent
  SimplicialComplex complex() const;           // order complex, vertex i = element i
};

// --- field mode ---------------------------------------------------------------

using FVec = std::vector<int>;  // coordinates mod p

int point_code(const FVec& v, long q);
std::vector<int> span_points(const std::vector<FVec>& gens, long q, int n);
std::string subspace_key(const std::vector<int>& pts);

// All proper nonzero subspaces of F_q^n ordered by containment.  Guards:
// q prime, q <= 9, n in [2, 4].
BuildingPoset tits_building_field(long q, int n);

struct FieldFrame {
  std::vector<FVec> lines;  // one generator per line
};

// Signed sum of the n! chambers of the apartment of the frame; a cycle.
Chain apartment_class_field(const FieldFrame& f, const BuildingPoset& b);

// --- module mode ---------------------------------------------------------------

// Truncated summand poset: saturations of spans of one or two lattice vectors
// of coefficient height <= bound (ranks 1 and, for orank 3, rank 2).
BuildingPoset tits_building_module(const ModuleLattice& m, long height_bound);

struct ModuleFrame {
  std::vector<ModuleLattice> constituents;  // rank-1 summands
};

// The summands U_X = saturate(sum of I_x, x in X) for every nonempty proper X.
// Keys are lattice keys; ids are assigned by (rank, key) into the indexer.
struct ApartmentChainResult {
  Chain chain;
  KeyIndexer indexer;                 // id -> lattice key (grade = orank-1)
  std::vector<ModuleLattice> elems;   // by id
};
ApartmentChainResult apartment_class_module(const ModuleFrame& f, const ModuleLattice& m);

// Same chain mapped into a building poset (every U_X must be present).
Chain apartment_class_module_in(const ModuleFrame& f, const ModuleLattice& m,
                                const BuildingPoset& b);

// True iff the plain (non-saturated) sum of the constituents equals m.
bool is_integral_frame(const ModuleFrame& f, const ModuleLattice& m);

// --- X building ---------------------------------------------------------------

BuildingPoset x_building(int m, const std::vector<std::string>& t);

// Ordered apartment data: pairs (a_k, b_k) of distinct labels per level.
struct XApartmentSpec {
  std::vector<std::pair<std::string, std::string>> pairs;
};

// [A_S] = sum over eps in (Z/2)^m of (-1)^eps [C_eps], with c^eps_k = b_k
// when eps_k = 0 and a_k when eps_k = 1.
Chain x_apartment_class(const XApartmentSpec& s, const BuildingPoset& xb);

}  // namespace steinlab
