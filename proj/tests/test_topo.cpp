#include "steinlab/topo.hpp"
#include "steinlab/properties.hpp"

#include <doctest.h>

using namespace steinlab;

namespace {

SimplicialComplex boundary_of_simplex(int k) {
  // boundary of the k-simplex on vertices 0..k
  SimplicialComplex x;
  for (int i = 0; i <= k; ++i) x.add_vertex("v" + std::to_string(i));
  for (int skip = 0; skip <= k; ++skip) {
    Simplex s;
    for (int i = 0; i <= k; ++i)
      if (i != skip) s.push_back(i);
    x.add_simplex(s);
  }
  return x;
}

}  // namespace

TEST_CASE("boundary of a 2-simplex") {
  SimplicialComplex x;
  for (int i = 0; i < 3; ++i) x.add_vertex("v" + std::to_string(i));
  x.add_simplex({0, 1, 2});
  Chain c;
  c.degree = 2;
  c.add({0, 1, 2}, 1);
  Chain b = boundary(x, c);
  CHECK(b.coeffs.at({1, 2}) == 1);
  CHECK(b.coeffs.at({0, 2}) == -1);
  CHECK(b.coeffs.at({0, 1}) == 1);
  CHECK(boundary_formal(b).is_zero());
  // a key outside the complex is an error
  Chain bad;
  bad.degree = 1;
  bad.add({0, 7}, 1);
  CHECK_THROWS(boundary(x, bad));
}

TEST_CASE("orientation bookkeeping in add_oriented") {
  Chain c;
  c.degree = 1;
  c.add_oriented({3, 1}, 1);  // odd permutation of (1,3)
  CHECK(c.coeffs.at({1, 3}) == -1);
  Chain d;
  d.degree = 1;
  d.add_oriented({2, 2}, 5);  // degenerate
  CHECK(d.is_zero());
}

TEST_CASE("barycentric chain of an edge and of a triangle") {
  SimplicialComplex x;
  for (int i = 0; i < 3; ++i) x.add_vertex("v" + std::to_string(i));
  x.add_simplex({0, 1, 2});

  Chain edge;
  edge.degree = 1;
  edge.add({0, 1}, 1);
  KeyIndexer idx;
  Chain be = barycentric_chain(x, edge, idx);
  // [x0, x1] -> [{x0} < {x0,x1}] - [{x1} < {x0,x1}]
  REQUIRE(be.coeffs.size() == 2);
  int v0 = idx.lookup(0, "0"), v1 = idx.lookup(0, "1"), v01 = idx.lookup(1, "0 1");
  REQUIRE(v0 >= 0);
  REQUIRE(v1 >= 0);
  REQUIRE(v01 >= 0);
  CHECK(be.coeffs.at({v0, v01}) == 1);
  CHECK(be.coeffs.at({v1, v01}) == -1);

  Chain tri;
  tri.degree = 2;
  tri.add({0, 1, 2}, 1);
  KeyIndexer idx2;
  Chain bt = barycentric_chain(x, tri, idx2);
  CHECK(bt.coeffs.size() == 6);  // one flag per permutation
  for (const auto& [k, v] : bt.coeffs) CHECK((v == 1 || v == -1));
  CHECK(boundary_formal(bt) == barycentric_chain(x, boundary(x, tri), idx2));
}

TEST_CASE("push_chain: identity and collapse") {
  Chain c;
  c.degree = 1;
  c.add({0, 1}, 2);
  c.add({1, 2}, -1);
  Chain id = push_chain(c, [](int v) { return v; });
  CHECK(id == c);
  Chain collapsed = push_chain(c, [](int) { return 0; });
  CHECK(collapsed.is_zero());
}

TEST_CASE("reduced homology of simplex boundaries matches spheres") {
  for (int k = 2; k <= 5; ++k) {
    SimplicialComplex x = boundary_of_simplex(k);
    HomologySummary hs = reduced_homology(x);
    for (int d = 0; d <= k - 1; ++d) {
      CHECK(hs.betti_at(d) == (d == k - 1 ? 1 : 0));
      CHECK(hs.torsion[d].empty());
    }
  }
}

TEST_CASE("homology detects torsion: six-vertex projective plane") {
  SimplicialComplex x;
  for (int i = 0; i < 6; ++i) x.add_vertex("v" + std::to_string(i));
  int tri[10][3] = {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4},
                    {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}};
  for (auto& t : tri) x.add_simplex({t[0], t[1], t[2]});
  CHECK(x.simplex_count(1) == 15);
  HomologySummary hs = reduced_homology(x);
  CHECK(hs.betti_at(0) == 0);
  CHECK(hs.betti_at(1) == 0);
  CHECK(hs.betti_at(2) == 0);
  REQUIRE(hs.torsion[1].size() == 1);
  CHECK(hs.torsion[1][0] == 2);
}

TEST_CASE("cones are acyclic") {
  SimplicialComplex x = boundary_of_simplex(3);
  SimplicialComplex c = cone(x, "apex");
  HomologySummary hs = reduced_homology(c);
  for (int d = 0; d <= c.dim(); ++d) {
    CHECK(hs.betti_at(d) == 0);
    CHECK(hs.torsion[d].empty());
  }
}

TEST_CASE("posets and order complexes") {
  // chain poset 0 < 1 < 2: order complex is a 2-simplex
  Poset p = poset_from_less(3, [](int a, int b) { return a < b; });
  CHECK(p.height(0) == 0);
  CHECK(p.height(2) == 2);
  SimplicialComplex oc = order_complex(p, {});
  CHECK(oc.simplex_count(2) == 1);
  CHECK(oc.simplex_count(1) == 3);
  // cycles are rejected
  CHECK_THROWS(poset_from_less(2, [](int, int) { return true; }));
}

TEST_CASE("component count and line format round trip") {
  SimplicialComplex x;
  x.add_vertex("a");
  x.add_vertex("b");
  x.add_vertex("c");
  x.add_simplex({0, 1});
  x.add_simplex({2});
  CHECK(component_count(x) == 2);
  SimplicialComplex y = complex_from_lines(complex_to_lines(x));
  CHECK(y.simplex_count(0) == 3);
  CHECK(y.simplex_count(1) == 1);
  CHECK(component_count(y) == 2);
}

TEST_CASE("hlevel CM check") {
  CHECK(is_hlevel_cm(boundary_of_simplex(3), 2));
  // a wedge-like disconnected graph is not CM of dimension 1
  SimplicialComplex g;
  for (int i = 0; i < 4; ++i) g.add_vertex("v" + std::to_string(i));
  g.add_simplex({0, 1});
  g.add_simplex({2, 3});
  CHECK(!is_hlevel_cm(g, 1));
}

TEST_CASE("fibered predicate on the identity") {
  SimplicialComplex d2 = boundary_of_simplex(2);
  std::set<int> core = {0, 1, 2};
  CHECK(check_fibered(d2, d2, [](int v) { return v; }, core));
}

TEST_CASE("simplex poset realizes the barycentric homology isomorphism") {
  SimplicialComplex x = boundary_of_simplex(3);
  std::vector<std::string> labels;
  Poset p = simplex_poset(x, &labels);
  CHECK(p.size == 4 + 6 + 4);
  SimplicialComplex sd = order_complex(p, labels);
  HomologySummary a = reduced_homology(x);
  HomologySummary b = reduced_homology(sd);
  CHECK(a.betti == b.betti);
}

TEST_CASE("poset pushforward validates strict order") {
  Chain c;
  c.degree = 1;
  c.add({0, 1}, 1);
  auto lt = [](int a, int b) { return a < b; };
  Chain ok = push_chain_poset(c, [](int v) { return v + 5; }, lt);
  CHECK(ok.coeffs.count({5, 6}) == 1);
  CHECK_THROWS(push_chain_poset(c, [](int) { return 3; }, lt));
  CHECK_THROWS(push_chain_poset(c, [](int v) { return -v; }, lt));
}

TEST_CASE("chain keys must match the degree") {
  Chain c;
  c.degree = 1;
  CHECK_THROWS(c.add({0, 1, 2}, 1));
}

TEST_CASE("chain JSON export") {
  Chain c;
  c.degree = 0;
  c.add({1}, -2);
  std::string js = chain_to_json(c, [](const Simplex& s) { return std::to_string(s[0]); });
  CHECK(js == "[[\"1\",-2]]");
}

TEST_CASE("topo property suite is green") {
  for (const auto& c : topo_properties(11)) {
    INFO(c.name);
    CHECK(c.status == "PASS");
  }
}
