#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, integer
// kernels, lattice saturation and linear solving over Z.  Everything runs on
// arbitrary-precision integers; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steinlab {

using Int = boost::multiprecision::cpp_int;
using Row = std::vector<Int>;
using Mat = std::vector<Row>;

// Floor division / modulo (sign of divisor respected, remainder in [0,|b|)).
Int fdiv(const Int& a, const Int& b);
Int fmod(const Int& a, const Int& b);

// g = s*a + t*b with g >= 0.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

Mat mat_identity(int n);
Mat mat_transpose(const Mat& m);
Mat mat_mul(const Mat& a, const Mat& b);
bool mat_eq(const Mat& a, const Mat& b);
std::string mat_to_string(const Mat& m);

// Canonical row-style Hermite normal form of the row span: echelon shape,
// pivots positive, entries above each pivot reduced into [0, pivot).  Zero
// rows are dropped, so equal lattices yield identical matrices.
Mat hnf(Mat m);

struct HnfTransform {
  Mat h;  // full-height echelon form (zero rows kept at the bottom)
  Mat u;  // unimodular, u * input == h
  int rank = 0;
};
HnfTransform hnf_transform(Mat m);

int mat_rank(const Mat& m);

// Basis (canonical HNF rows) of { x : x * m == 0 }.
Mat left_kernel(const Mat& m);
// Basis of { x : m * x^T == 0 }.
Mat right_kernel(const Mat& m, int cols);

// Saturation of the row lattice inside Z^cols: (span_Q of rows) ∩ Z^cols.
Mat saturation(const Mat& m, int cols);

// v in rowspan_Z(h)?  h must be canonical HNF.
bool hnf_contains(const Mat& h, const Row& v);

// Solve x * b == v over Z (b arbitrary, not necessarily HNF).
std::optional<Row> solve_left(const Mat& b, const Row& v);

// Invariant factors d_1 | d_2 | ... (all positive) of the matrix, sparse
// elimination with minimal-|value| pivoting, ties broken by least fill-in.
std::vector<Int> snf_invariant_factors(const Mat& m);

// Rank of m over F_p; fast cross-check path for Betti numbers.
int rank_mod_p(const Mat& m, std::uint64_t p);

// Deterministic pseudo-random stream for hand-rolled property generators.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  // uniform in [lo, hi]
  long long range(long long lo, long long hi);
};

}  // namespace steinlab
