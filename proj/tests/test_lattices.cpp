#include "steinlab/lattices.hpp"
#include "steinlab/properties.hpp"

#include <doctest.h>

#include <set>

using namespace steinlab;

namespace {

const RingDesc Z5 = RingDesc::imag_quadratic(-5);
const RingDesc ZZ = RingDesc::integers();

RingElem e(long a, long b = 0) { return RingElem{Int(a), Int(b)}; }

OVector vec(std::vector<RingElem> cs) {
  OVector v;
  v.c = std::move(cs);
  return v;
}

}  // namespace

TEST_CASE("span and saturate over Z") {
  ModuleLattice s = span_and_saturate(ZZ, 2, {vec({e(2), e(0)})});
  REQUIRE(s.zrank() == 1);
  CHECK(s.basis[0] == Row{1, 0});
  // (2,5) is primitive, hence already saturated
  ModuleLattice t = span_and_saturate(ZZ, 2, {vec({e(2), e(5)})});
  CHECK(t.basis == Mat{{2, 5}});
  CHECK(module_span(ZZ, 2, {vec({e(2), e(5)})}) == t);
  // zero span allowed
  CHECK(span_and_saturate(ZZ, 2, {vec({e(0), e(0)})}).is_zero());
}

TEST_CASE("saturation over Z[sqrt(-5)] can grow the span and carry a class") {
  ClassGroup cg = class_group(Z5);
  OVector v = vec({e(2), e(1, 1)});
  ModuleLattice span = module_span(Z5, 2, {v});
  ModuleLattice sat = span_and_saturate(Z5, 2, {v});
  CHECK(module_subset(span, sat));
  CHECK(!(span == sat));
  CHECK(sat.orank() == 1);
  CHECK(steinitz_class(sat, cg).index == 1);
  // free rank-1 summands have trivial class
  ModuleLattice f = span_and_saturate(Z5, 2, {vec({e(1), e(0)})});
  CHECK(steinitz_class(f, cg).index == 0);
}

TEST_CASE("is_summand") {
  ModuleLattice amb = full_module(ZZ, 2);
  CHECK(!is_summand(module_span(ZZ, 2, {vec({e(2), e(0)})}), amb));
  CHECK(is_summand(module_span(ZZ, 2, {vec({e(2), e(5)})}), amb));
  ModuleLattice sub = module_span(ZZ, 2, {vec({e(2), e(0)})});
  CHECK(is_summand(module_saturate(sub), amb));
  // non-containment is an error
  ModuleLattice small = module_span(ZZ, 2, {vec({e(1), e(0)})});
  CHECK_THROWS(is_summand(amb, small));
}

TEST_CASE("steinitz class examples") {
  ClassGroup cg = class_group(Z5);
  // free standard summands
  ModuleLattice free2 = module_span(Z5, 3, {vec({e(1), e(0), e(0)}), vec({e(0), e(1), e(0)})});
  CHECK(steinitz_class(free2, cg).index == 0);
  // the ideal (2, 1+w) inside O^1
  ModuleLattice ideal_lat = module_span(Z5, 1, {vec({e(2)}), vec({e(1, 1)})});
  CHECK(steinitz_class(ideal_lat, cg).index == 1);
  // direct sum of two class-1 rank-1 summands has trivial class
  ModuleLattice a = span_and_saturate(Z5, 2, {vec({e(2), e(1, 1)})});
  ModuleLattice b = span_and_saturate(Z5, 2, {vec({e(1, -1), e(3)})});
  ModuleLattice sum = module_sum(a, b);
  if (sum.orank() == 2 && lattice_intersection(a, b).is_zero()) {
    int cls = cg.cls_add(steinitz_class(a, cg).index, steinitz_class(b, cg).index);
    CHECK(steinitz_class(sum, cg).index == cls);
  }
  CHECK_THROWS(steinitz_class(zero_module(Z5, 2), cg));
}

TEST_CASE("lattice intersection") {
  ModuleLattice x = module_span(ZZ, 2, {vec({e(1), e(0)})});
  ModuleLattice y = module_span(ZZ, 2, {vec({e(0), e(1)})});
  CHECK(lattice_intersection(x, y).is_zero());

  // two hyperplane summands of Z^3 meet in a rank-1 summand; brute-force
  // oracle: intersect by scanning small vectors
  ModuleLattice h1 = module_span(ZZ, 3, {vec({e(1), e(0), e(0)}), vec({e(0), e(1), e(1)})});
  ModuleLattice h2 = module_span(ZZ, 3, {vec({e(0), e(1), e(0)}), vec({e(1), e(0), e(2)})});
  ModuleLattice inter = lattice_intersection(h1, h2);
  CHECK(inter.orank() == 1);
  CHECK(is_summand(inter, full_module(ZZ, 3)));
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c) {
        Row w = {Int(a), Int(b), Int(c)};
        bool in_both = module_contains_row(h1, w) && module_contains_row(h2, w);
        CHECK(in_both == module_contains_row(inter, w));
      }
  CHECK_THROWS(lattice_intersection(h1, x));
}

TEST_CASE("unimodularity of vectors") {
  CHECK(is_unimodular(ZZ, vec({e(2), e(5)})));
  CHECK(!is_unimodular(Z5, vec({e(2), e(1, 1)})));
  CHECK(is_unimodular(Z5, vec({e(1), e(0), e(0)})));
  CHECK_THROWS(is_unimodular(ZZ, vec({e(0), e(0)})));
}

TEST_CASE("vector heights: box over Z, total norm over quadratic") {
  CHECK(vector_height(ZZ, vec({e(2), e(-3)})) == 3);
  CHECK(vector_height(Z5, vec({e(1), e(1, 1)})) == 7);
}

TEST_CASE("find_intermediate_summand hits rank and class targets") {
  ClassGroup cg = class_group(Z5);
  SearchBudget budget;
  // a class-1 rank-1 summand of O^2
  SummandSearchResult r = find_intermediate_summand(
      zero_module(Z5, 2), full_module(Z5, 2), 1, IdealClass{1}, cg, budget, 0);
  REQUIRE(r.found.has_value());
  CHECK(r.found->orank() == 1);
  CHECK(is_summand(*r.found, full_module(Z5, 2)));
  CHECK(steinitz_class(*r.found, cg).index == 1);

  // over Z the trivial class is the only one; span{(1,0)} is acceptable
  ClassGroup cgz = class_group(ZZ);
  SummandSearchResult rz = find_intermediate_summand(
      zero_module(ZZ, 2), full_module(ZZ, 2), 1, IdealClass{0}, cgz, budget, 0);
  REQUIRE(rz.found.has_value());
  CHECK(rz.found->orank() == 1);
  CHECK(is_summand(*rz.found, full_module(ZZ, 2)));

  // nested chain with prescribed signature ((1, c1), (2, c2)) inside O^3
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      SummandSearchResult s1 = find_intermediate_summand(
          zero_module(Z5, 3), full_module(Z5, 3), 1, IdealClass{c1}, cg, budget, 0);
      REQUIRE(s1.found.has_value());
      SummandSearchResult s2 = find_intermediate_summand(
          *s1.found, full_module(Z5, 3), 2, IdealClass{c2}, cg, budget, 0);
      REQUIRE(s2.found.has_value());
      CHECK(module_subset(*s1.found, *s2.found));
      CHECK(steinitz_class(*s1.found, cg).index == c1);
      CHECK(steinitz_class(*s2.found, cg).index == c2);
      CHECK(is_summand(*s2.found, full_module(Z5, 3)));
    }

  // precondition violations
  CHECK_THROWS(find_intermediate_summand(zero_module(Z5, 2), full_module(Z5, 2), 2,
                                         IdealClass{0}, cg, budget, 0));
}

TEST_CASE("rank1_summands over Z at bound 1") {
  std::vector<ModuleLattice> r1 = rank1_summands(full_module(ZZ, 2), 1);
  REQUIRE(r1.size() == 4);
  std::set<std::string> keys;
  for (const auto& u : r1) {
    CHECK(u.orank() == 1);
    CHECK(is_summand(u, full_module(ZZ, 2)));
    keys.insert(mat_to_string(u.basis));
  }
  CHECK(keys == std::set<std::string>{"1,0", "0,1", "1,1", "1,-1"});
}

TEST_CASE("rank1 summands over Z[sqrt(-5)] reach both classes by bound 3") {
  ClassGroup cg = class_group(Z5);
  std::set<int> classes;
  for (const auto& u : rank1_summands(full_module(Z5, 2), 3))
    classes.insert(steinitz_class(u, cg).index);
  CHECK(classes == std::set<int>{0, 1});
}

TEST_CASE("lattice property suite is green") {
  for (const auto& c : lattice_properties(7)) {
    INFO(c.name);
    CHECK(c.status == "PASS");
  }
}
