#include "steinlab/arith.hpp"
#include "steinlab/properties.hpp"

#include <doctest.h>

using namespace steinlab;

namespace {

const RingDesc Z5 = RingDesc::imag_quadratic(-5);
const RingDesc ZZ = RingDesc::integers();

RingElem e(long a, long b = 0) { return RingElem{Int(a), Int(b)}; }

// brute-force oracle: does the ring contain an element of the given norm?
bool norm_represented(const RingDesc& r, long target) {
  for (long a = -target; a <= target; ++a)
    for (long b = -target; b <= target; ++b)
      if (re_norm(r, RingElem{Int(a), Int(b)}) == target) return true;
  return false;
}

}  // namespace

TEST_CASE("ring descriptors parse and print") {
  CHECK(RingDesc::parse("Z") == ZZ);
  CHECK(RingDesc::parse("Q(sqrt(-5))") == Z5);
  CHECK(RingDesc::parse("F_3") == RingDesc::finite_field(3));
  CHECK(Z5.to_string() == "Q(sqrt(-5))");
  CHECK_THROWS(RingDesc::parse("Q(sqrt(4))"));
  CHECK_THROWS(RingDesc::imag_quadratic(-4));   // not squarefree
  CHECK_THROWS(RingDesc::imag_quadratic(5));    // not negative
  CHECK_THROWS(RingDesc::finite_field(6));
}

TEST_CASE("integral basis conventions") {
  // d = -5 = 3 mod 4: omega = sqrt(-5), disc = -20
  CHECK(Z5.disc == -20);
  CHECK(Z5.omega_trace == 0);
  CHECK(Z5.omega_norm == 5);
  // d = -23 = 1 mod 4: omega = (1+sqrt(-23))/2, disc = -23
  RingDesc z23 = RingDesc::imag_quadratic(-23);
  CHECK(z23.disc == -23);
  CHECK(z23.omega_trace == 1);
  CHECK(z23.omega_norm == 6);
  // norms and conjugation
  CHECK(re_norm(Z5, e(1, 1)) == 6);
  CHECK(re_norm(z23, e(0, 1)) == 6);
  CHECK(re_conj(Z5, e(1, 1)) == e(1, -1));
  CHECK(re_conj(z23, e(0, 1)) == e(1, -1));
  CHECK(re_mul(Z5, e(0, 1), e(0, 1)) == e(-5, 0));
  CHECK(re_mul(z23, e(0, 1), e(0, 1)) == e(-6, 1));
}

TEST_CASE("element parsing round trips") {
  for (const char* s : {"3", "-2", "w", "-w", "1+w", "1-2w", "-3+5w"}) {
    RingElem x = parse_elem(s);
    CHECK(parse_elem(elem_to_string(x)) == x);
  }
}

TEST_CASE("units") {
  CHECK(ring_units(ZZ).size() == 2);
  CHECK(ring_units(Z5).size() == 2);
  CHECK(ring_units(RingDesc::imag_quadratic(-1)).size() == 4);
  CHECK(ring_units(RingDesc::imag_quadratic(-3)).size() == 6);
  for (const auto& u : ring_units(RingDesc::imag_quadratic(-3)))
    CHECK(re_norm(RingDesc::imag_quadratic(-3), u) == 1);
}

TEST_CASE("ideal from generators: (2, 1+w) over Z[sqrt(-5)]") {
  Ideal p = ideal_from_generators(Z5, {e(2), e(1, 1)});
  CHECK(p.norm() == 2);
  // non-principal: no element has norm 2 (a^2 + 5 b^2 = 2 is insoluble)
  CHECK(!norm_represented(Z5, 2));
  CHECK(!p.is_unit_ideal());
  // membership
  CHECK(p.contains(e(2)));
  CHECK(p.contains(e(1, 1)));
  CHECK(!p.contains(e(1)));
  // idempotent: regenerating from the HNF basis returns the same ideal
  Ideal p2 = ideal_from_generators(Z5, {e(p.m00.convert_to<long>(), p.m01.convert_to<long>()),
                                        e(0, p.m11.convert_to<long>())});
  CHECK(p2 == p);
}

TEST_CASE("ideal examples over Z") {
  Ideal one = ideal_from_generators(ZZ, {e(6), e(10), e(15)});
  CHECK(one.is_unit_ideal());
  Ideal unit5 = ideal_from_generators(Z5, {e(1)});
  CHECK(unit5.is_unit_ideal());
  CHECK(unit5.m00 == 1);
  CHECK(unit5.m01 == 0);
  CHECK(unit5.m11 == 1);
  CHECK_THROWS_WITH(ideal_from_generators(ZZ, {e(0), e(0)}), "zero ideal");
}

TEST_CASE("ideal product, sum, intersection") {
  Ideal p = ideal_from_generators(Z5, {e(2), e(1, 1)});
  Ideal pbar = ideal_from_generators(Z5, {e(2), e(1, -1)});
  CHECK(ideal_product(p, pbar) == ideal_principal(Z5, e(2)));
  CHECK(ideal_product(p, ideal_unit(Z5)) == p);
  Ideal q3 = ideal_from_generators(Z5, {e(3), e(1, 1)});
  CHECK(ideal_sum(p, q3).is_unit_ideal());
  // 2 ramifies: 1-w = 2-(1+w), so pbar is p itself and p^2 = (2)
  CHECK(pbar == p);
  CHECK(ideal_intersection(p, pbar) == p);
  // comaximal primes: intersection = product = (1+w)
  CHECK(ideal_intersection(p, q3) == ideal_principal(Z5, e(1, 1)));
  CHECK(ideal_product(p, q3) == ideal_principal(Z5, e(1, 1)));
  CHECK_THROWS(ideal_product(p, ideal_unit(ZZ)));
  // zero ideal flows through its own code path
  CHECK(ideal_product(p, ideal_zero(Z5)).zero);
  CHECK(ideal_sum(p, ideal_zero(Z5)) == p);
}

TEST_CASE("class group orders by reduced forms") {
  ClassGroup cg5 = class_group(Z5);
  CHECK(cg5.order == 2);
  CHECK(cg5.rep_forms[0] == QForm{1, 0, 5});
  CHECK(cg5.rep_forms[1] == QForm{2, 2, 3});

  ClassGroup cg23 = class_group(RingDesc::imag_quadratic(-23));
  CHECK(cg23.order == 3);
  CHECK(cg23.rep_forms[0] == QForm{1, 1, 6});
  // the two non-principal classes carry the forms (2, +-1, 3)
  CHECK(((cg23.rep_forms[1] == QForm{2, -1, 3} && cg23.rep_forms[2] == QForm{2, 1, 3}) ||
         (cg23.rep_forms[1] == QForm{2, 1, 3} && cg23.rep_forms[2] == QForm{2, -1, 3})));

  CHECK(class_group(ZZ).order == 1);
  CHECK(class_group(RingDesc::imag_quadratic(-1)).order == 1);
  CHECK_THROWS(class_group(RingDesc::finite_field(3)));
}

TEST_CASE("ideal classes") {
  ClassGroup cg = class_group(Z5);
  Ideal p = ideal_from_generators(Z5, {e(2), e(1, 1)});
  CHECK(ideal_class(p, cg).index == 1);
  CHECK(ideal_class(ideal_principal(Z5, e(7)), cg).index == 0);
  Ideal q = ideal_from_generators(Z5, {e(3), e(1, 1)});
  // a^2 + 5 b^2 = 3 is insoluble, so q is non-principal; h = 2 forces the class
  CHECK(!norm_represented(Z5, 3));
  CHECK(ideal_class(q, cg).index == 1);
  CHECK(cg.cls_add(1, 1) == 0);
  CHECK(cg.cls_neg(1) == 1);
  CHECK_THROWS(ideal_class(ideal_zero(Z5), cg));
}

TEST_CASE("residues enumerate the quotient") {
  Ideal p = ideal_from_generators(Z5, {e(2), e(1, 1)});
  CHECK(static_cast<Int>(ideal_residues(p).size()) == p.norm());
  Ideal five = ideal_principal(ZZ, e(5));
  CHECK(ideal_residues(five).size() == 5);
}

TEST_CASE("ideal serialization") {
  Ideal p = ideal_from_generators(Z5, {e(2), e(1, 1)});
  CHECK(p.to_string() == "1 1 0 2");
  CHECK(ideal_principal(ZZ, e(-6)).to_string() == "6");
}

TEST_CASE("arith property suite is green") {
  for (const auto& c : arith_properties(42)) {
    INFO(c.name);
    CHECK(c.status == "PASS");
  }
}
