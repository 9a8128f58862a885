#pragma once

// Exact arithmetic for the supported base rings: Z, maximal imaginary
// quadratic orders O_d (d < 0 squarefree), and prime fields F_p.  Ideals are
// held in Hermite normal form with respect to the integral basis (1, omega);
// class groups are computed from reduced binary quadratic forms of the field
// discriminant.

#include "steinlab/exact.hpp"

#include <string>
#include <vector>

namespace steinlab {

enum class RingKind { Integers, ImagQuadratic, FiniteField };

struct RingDesc {
  RingKind kind = RingKind::Integers;
  long d = 0;          // squarefree, negative (ImagQuadratic only)
  long p = 0;          // FiniteField only
  bool half_basis = false;  // true when omega = (1+sqrt(d))/2, i.e. d = 1 mod 4
  Int disc = 0;        // 4d, or d when d = 1 mod 4
  Int omega_trace = 0; // omega^2 = trace*omega - norm
  Int omega_norm = 0;

  static RingDesc integers();
  static RingDesc imag_quadratic(long d);
  static RingDesc finite_field(long p);
  static RingDesc parse(const std::string& s);

  std::string to_string() const;
  bool operator==(const RingDesc& o) const {
    return kind == o.kind && d == o.d && p == o.p;
  }
  bool is_quadratic() const { return kind == RingKind::ImagQuadratic; }
};

// a + b*omega; b is always 0 over Z, and over F_p the value is a mod p.
struct RingElem {
  Int a = 0, b = 0;
  bool operator==(const RingElem& o) const { return a == o.a && b == o.b; }
  bool operator<(const RingElem& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

RingElem re_zero();
RingElem re_one();
RingElem re_from_int(const Int& v);
RingElem re_add(const RingDesc& r, const RingElem& x, const RingElem& y);
RingElem re_sub(const RingDesc& r, const RingElem& x, const RingElem& y);
RingElem re_neg(const RingDesc& r, const RingElem& x);
RingElem re_mul(const RingDesc& r, const RingElem& x, const RingElem& y);
RingElem re_conj(const RingDesc& r, const RingElem& x);
Int re_norm(const RingDesc& r, const RingElem& x);
bool re_is_zero(const RingElem& x);
bool re_is_unit(const RingDesc& r, const RingElem& x);

// |x| over Z, field norm over imaginary quadratic rings.
Int elem_height(const RingDesc& r, const RingElem& x);

// All units of the ring (finite for every supported ring).
std::vector<RingElem> ring_units(const RingDesc& r);

// All elements with elem_height <= bound, deterministic order.
std::vector<RingElem> enumerate_elems(const RingDesc& r, const Int& bound);

std::string elem_to_string(const RingElem& x);
RingElem parse_elem(const std::string& s);  // "3", "-1+2w", "w", ...

// --- Ideals -----------------------------------------------------------------

// Nonzero ideals store the canonical HNF basis rows (m00, m01), (0, m11)
// meaning { m00 + m01*omega, m11*omega } over quadratic rings, or the single
// nonnegative generator m00 over Z.  The zero ideal is a distinguished case
// and never an HNF matrix.
struct Ideal {
  RingDesc ring;
  bool zero = false;
  Int m00 = 0, m01 = 0, m11 = 0;

  Int norm() const;
  bool is_unit_ideal() const;
  bool contains(const RingElem& x) const;
  bool operator==(const Ideal& o) const;
  std::string to_string() const;  // HNF rows, row-major decimal
};

Ideal ideal_zero(const RingDesc& r);
Ideal ideal_unit(const RingDesc& r);
Ideal ideal_principal(const RingDesc& r, const RingElem& g);
// Throws std::invalid_argument("zero ideal") if all generators vanish.
Ideal ideal_from_generators(const RingDesc& r, const std::vector<RingElem>& gens);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_intersection(const Ideal& a, const Ideal& b);
Ideal ideal_conjugate(const Ideal& a);

// Coset representatives of O/I (I nonzero); norm(I) of them.
std::vector<RingElem> ideal_residues(const Ideal& i);

// --- Class groups -----------------------------------------------------------

struct QForm {
  Int a = 0, b = 0, c = 0;
  bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const QForm& o) const;
};

QForm reduce_form(QForm f);
// Positive definite form attached to a nonzero ideal via the oriented HNF
// basis; its reduced form is the canonical label of the ideal class.
QForm form_of_ideal(const Ideal& i);

struct IdealClass {
  int index = 0;
  bool operator==(const IdealClass& o) const { return index == o.index; }
};

struct ClassGroup {
  RingDesc ring;
  int order = 1;
  std::vector<Ideal> reps;       // reps[0] is the unit ideal
  std::vector<QForm> rep_forms;  // reduced forms, parallel to reps
  std::vector<std::vector<int>> table;

  int cls_add(int i, int j) const { return table[i][j]; }
  int cls_neg(int i) const;
};

// Enumerates reduced forms of the field discriminant; throws for finite
// fields.  Z yields the trivial group.
ClassGroup class_group(const RingDesc& r);

IdealClass ideal_class(const Ideal& i, const ClassGroup& cg);

}  // namespace steinlab
