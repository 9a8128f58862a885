#pragma once

// Finite simplicial complexes, integer chains, posets and order complexes,
// and exact reduced homology via sparse Smith normal form.
//
// Orientation convention, fixed globally: a chain coefficient is relative to
// the ascending vertex-id order of its simplex; a permuted listing
// contributes the sign of the permutation.

#include "steinlab/exact.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace steinlab {

using Simplex = std::vector<int>;  // sorted vertex ids

struct SimplicialComplex {
  std::vector<std::string> labels;            // vertex id -> label
  std::map<std::string, int> vertex_ids;      // label -> id
  std::vector<std::set<Simplex>> by_dim;      // simplices per dimension

  int add_vertex(const std::string& label);
  int vertex(const std::string& label) const;  // -1 when absent
  // inserts the simplex and all of its faces
  void add_simplex(Simplex s);
  bool has_simplex(const Simplex& s) const;
  int dim() const;
  long long simplex_count(int d) const;
  std::vector<Simplex> simplices(int d) const;  // sorted
  bool empty() const;
};

struct Chain {
  int degree = -1;
  std::map<Simplex, long long> coeffs;  // no zero entries

  bool is_zero() const { return coeffs.empty(); }
  void add(const Simplex& sorted_key, long long c);
  // adds a possibly unsorted listing with its permutation sign; degenerate
  // listings (repeated vertices) contribute nothing
  void add_oriented(Simplex key, long long c);
  bool operator==(const Chain& o) const {
    return degree == o.degree && coeffs == o.coeffs;
  }
};

Chain chain_sub(const Chain& a, const Chain& b);
Chain chain_neg(const Chain& a);

// Alternating-sign face sum.  The complex validates membership of every key.
Chain boundary(const SimplicialComplex& x, const Chain& c);
// Key-level boundary without a complex (used for chains over virtual keys).
Chain boundary_formal(const Chain& c);

// Pushforward along a vertex map; collapsed simplices contribute zero.
Chain push_chain(const Chain& c, const std::function<int(int)>& vertex_map);

// Poset pushforward: the map must be strictly increasing on the support
// (every chain key maps to a strictly ascending tuple), else it throws.
Chain push_chain_poset(const Chain& c, const std::function<int(int)>& vertex_map,
                       const std::function<bool(int, int)>& less);

// Assigns contiguous ids to a family of keys so that ids respect a given
// grading (simplices sorted by (grade, key)); used for barycentric targets.
struct KeyIndexer {
  std::map<std::pair<int, std::string>, int> ids;
  std::vector<std::string> names;
  int id(int grade, const std::string& name);          // inserts
  int lookup(int grade, const std::string& name) const;  // -1 when absent
};

// Chain map of barycentric subdivision: a simplex goes to the signed sum of
// its full flags.  The image chain lives on flag-tuples of simplex ids; the
// indexer assigns ids to the simplices of x by (dimension, key) so that
// inclusion order matches id order.
Chain barycentric_chain(const SimplicialComplex& x, const Chain& c, KeyIndexer& idx);

struct Poset {
  int size = 0;
  std::vector<std::vector<char>> lt;  // strict order, transitively closed
  std::vector<int> heights;

  bool less(int a, int b) const { return lt[a][b]; }
  int height(int a) const { return heights[a]; }
};

Poset poset_from_less(int size, const std::function<bool(int, int)>& less);
// Order complex: vertices are poset elements, simplices are chains.
SimplicialComplex order_complex(const Poset& p, const std::vector<std::string>& labels);

// The poset of simplices of a complex under inclusion; element i carries the
// label of its simplex (space-separated sorted vertex labels).
Poset simplex_poset(const SimplicialComplex& x, std::vector<std::string>* labels);

struct HomologySummary {
  std::vector<long long> betti;            // reduced, degrees 0..dim
  std::vector<std::vector<Int>> torsion;   // invariant factors > 1 per degree

  long long betti_at(int d) const {
    return (d >= 0 && d < static_cast<int>(betti.size())) ? betti[d] : 0;
  }
};

// Exact reduced integer homology via sparse SNF of the boundary matrices.
// The Euler characteristic identity is asserted on every run.
HomologySummary reduced_homology(const SimplicialComplex& x);

// Boundary matrix of degree d (rows: (d-1)-simplices, cols: d-simplices).
Mat boundary_matrix(const SimplicialComplex& x, int d);

// H-level Cohen-Macaulay check of dimension d: reduced homology vanishes
// below the top degree, for the complex and for every simplex link.
bool is_hlevel_cm(const SimplicialComplex& x, int d);
SimplicialComplex link_complex(const SimplicialComplex& x, const Simplex& s);
SimplicialComplex cone(const SimplicialComplex& x, const std::string& apex_label);

// Def-style fibered test: for every vertex subset U with |U| <= dim(y)+1,
// U is a simplex of x iff f(U) is a simplex of y of the same dimension and,
// when f(U) is maximal in y, U meets the core.
bool check_fibered(const SimplicialComplex& x, const SimplicialComplex& y,
                   const std::function<int(int)>& f, const std::set<int>& core);
// Sufficient criterion restricted to top simplices (complexes whose simplices
// all extend to top dimension).
bool fibered_top_criterion(const SimplicialComplex& x, const SimplicialComplex& y,
                           const std::function<int(int)>& f, const std::set<int>& core);

int component_count(const SimplicialComplex& x);

// Line-based complex format: one simplex per line as sorted vertex labels.
std::string complex_to_lines(const SimplicialComplex& x);
SimplicialComplex complex_from_lines(const std::string& text);
std::string chain_to_json(const Chain& c, const std::function<std::string(const Simplex&)>& key_name);

}  // namespace steinlab
