#pragma once

// The integral apartment class map (boundary, then barycentric chain map,
// then poset pushforward), coinvariant dimensions at field scale, good/bad
// permutation combinatorics, folded frames and the integral image analysis.

#include "steinlab/buildings.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace steinlab {

// --- permutation combinatorics ------------------------------------------------

struct PermProfile {
  std::vector<int> word;  // one-line notation, 1-based values
  std::vector<int> s;     // running sup profile, s[k-1] = s(k)
  bool good = false;
  int x = 0, y = 0;       // defined when bad
};

PermProfile classify_perm(const std::vector<int>& sigma);
int perm_sign(const std::vector<int>& sigma);
// The 2^(n-1) permutations (1 2)^e1 (2 3)^e2 ... (n-1 n)^e_{n-1}, in
// lexicographic epsilon order; composition convention (st)(x) = s(t(x)).
std::vector<std::vector<int>> good_perms(int n);
// sigma-bar = sigma o (x_sigma y_sigma); throws on good input.
PermProfile bad_involution(const PermProfile& p);

// --- phi: the three-map composition --------------------------------------------

// F_*(b(boundary([v]))) for an ordered basis of F_q^n; the result lives on the
// flags of the building.  Equals (-1)^(n-1) times the apartment class of the
// induced frame under the global orientation convention.
Chain phi_map_field(const std::vector<FVec>& basis, const BuildingPoset& b);

// Module variant; keys are mapped through the apartment indexer of the
// induced frame so results of different bases over the same frame agree.
Chain phi_map_module(const RingDesc& ring, const std::vector<OVector>& basis,
                     const ModuleLattice& m, ApartmentChainResult* out_apartment);

// Rank of the span of phi over all ordered bases of F_q^n (exact integer rank).
struct PhiSpanReport {
  long long bases = 0;
  int span_rank = 0;
  int steinberg_rank = 0;  // Betti_(n-2) of the building
};
PhiSpanReport phi_span_field(long q, int n);

// --- coinvariants ---------------------------------------------------------------

struct SignedPerm {
  std::vector<int> to;
  std::vector<int> sign;
};

// dim over Q of V / span{ x - g x } where V is the row span of cycle_basis
// and g runs over the given actions on coordinates.
int coinvariants_dim(const Mat& cycle_basis, const std::vector<SignedPerm>& actions);

// Cycle space of top degree of the building order complex, as rows over the
// top-simplex coordinate basis (returned in chambers).
Mat top_cycle_space(const SimplicialComplex& cx, std::vector<Simplex>* chambers);

// Action of g in GL_n(F_q) on the top simplices of the building complex.
SignedPerm gl_action_on_chambers(const std::vector<FVec>& g, const BuildingPoset& b,
                                 const std::vector<Simplex>& chambers);

std::vector<std::vector<FVec>> gl_generators(long q, int n);

// dim of the coinvariants of the Steinberg module of F_q^n under GL_n(F_q).
int steinberg_coinvariants_dim(long q, int n);

// --- folded frames ---------------------------------------------------------------

struct CheckResult {
  std::string name;
  std::string status;  // PASS / FAIL / EVIDENCE
  std::string detail;
};

struct FoldedFrameCertificate {
  bool success = false;
  std::string failure;
  ModuleFrame frame;
  std::vector<ModuleLattice> b_chain;                 // B_1 .. B_{n-1}
  std::vector<std::vector<ModuleLattice>> a_chains;   // a_chains[i-1] = A_i^{(i)} .. A_{n-1}^{(i)}
  std::vector<CheckResult> claims;
  Chain psi_image, psi_good, psi_bad, target;         // over the X order complex
  long long candidates_tried = 0;
  std::string to_json(const BuildingPoset& xb) const;
};

// Constructs the summand chains B_k and A_k^(i), the frame I_1 = B_1,
// I_k = intersection of the A_{k-1}^(i), and verifies the chain identity
// psi_*[A_I] = [A_S] together with its good/bad split, all exactly.
FoldedFrameCertificate construct_folded_frame(const ModuleLattice& m,
                                              const XApartmentSpec& s,
                                              const ClassGroup& cg,
                                              const BuildingPoset& xb,
                                              const SearchBudget& budget,
                                              std::uint64_t seed);

// --- integral image -----------------------------------------------------------------

struct IntegralImageReport {
  int n = 0;
  long bound = 0;
  long long rank1_count = 0;
  long long frame_count = 0;       // integral frames found
  int span_rank = 0;               // rank of psi_*(St^Int) within H~ of X
  int target_rank = 0;             // (h-1)^(n-1)
  Int counting_bound = 0;          // binom(h, n-1), the paper-style cap (h > 2)
  bool multiset_invariance = true; // psi image depends only on the class multiset
  bool distinct_vanish = true;     // image vanishes unless classes are distinct
};

IntegralImageReport integral_image_span(const ModuleLattice& m, long bound,
                                        const ClassGroup& cg, const BuildingPoset& xb);

// vcd closed forms: GL = r1*C(n+1,2) + r2*n^2 - n,
//                   SL = r1*(C(n+1,2)-1) + r2*(n^2-1) - (n-1).
std::pair<Int, Int> vcd_formulas(int r1, int r2, int n);

}  // namespace steinlab
