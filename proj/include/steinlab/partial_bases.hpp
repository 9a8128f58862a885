#pragma once

// Complexes of partial I-bases with certified three-valued membership, the
// Reiner completion step, and good complements.  The functional L is fixed as
// the last-coordinate projection throughout.

#include "steinlab/lattices.hpp"
#include "steinlab/topo.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace steinlab {

struct PBSpec {
  enum class IdealKind { Zero, Unit, Proper };

  RingDesc ring;
  int n = 2;
  IdealKind kind = IdealKind::Unit;
  Ideal ideal;        // only meaningful for Proper
  Int height = 2;     // vertex enumeration bound (|x| over Z, norm otherwise)
  Int search_height = 10;  // completion search bound, >= height

  bool residue_ok(const RingElem& x) const;  // x = 0 or 1 mod I
  std::string ideal_string() const;
};

RingElem l_value(const OVector& v);  // last coordinate

struct MembershipVerdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<OVector> certificate;            // a full I-basis containing the simplex
  std::string reason;                          // for No / Unknown
  std::vector<std::string> allowed_residues;   // exact obstruction data when known
};

// All unimodular vectors with every coordinate of height <= spec.height,
// deduplicated, deterministic order.
std::vector<OVector> enumerate_unimodular(const PBSpec& spec);

// Three-valued membership: Yes with an explicit completing I-basis; exact No
// when one is decidable (k = n and k = n-1 are fully decided); Unknown when
// the bounded search is exhausted.
MembershipVerdict certify_I_simplex(const std::vector<OVector>& vecs, const PBSpec& spec);

// Re-verifies a Yes certificate from scratch: the claimed basis really is a
// basis, satisfies every residue condition, and contains the simplex.
bool verify_certificate(const std::vector<OVector>& basis,
                        const std::vector<OVector>& simplex, const PBSpec& spec);

struct BuildStats {
  long long vertices_enumerated = 0;
  std::vector<long long> certified;  // per dimension
  std::vector<long long> rejected;
  std::vector<long long> unknown;
  std::map<std::string, std::vector<OVector>> certificates;  // simplex label -> basis
};

// Complex on certified-Yes simplices among the enumerated vertices; Unknown
// simplices are excluded and counted.
SimplicialComplex build_complex(const PBSpec& spec, BuildStats* stats);

// Coefficients c_3..c_n with (b_1, b_2 + sum c_i b_i) the unit ideal, found in
// increasing height order; nullopt when the bounded search is exhausted.
std::optional<std::vector<RingElem>> reiner_complete(const RingDesc& ring,
                                                     const std::vector<RingElem>& b,
                                                     const Int& height_bound);

struct GoodComplement {
  ModuleLattice w;
  std::vector<OVector> w_basis;
};

// A complement W with O^n = V_sigma + W (direct) and L(W) = O, following the
// zero / unit / intermediate-ideal case analysis.  The excluded case
// ((0) != I_sigma != O with |sigma| = n-1) yields nullopt with a reason.
std::optional<GoodComplement> find_good_complement(const std::vector<OVector>& sigma,
                                                   const PBSpec& spec,
                                                   std::string* reason);

}  // namespace steinlab
