#include "steinlab/exact.hpp"

#include <doctest.h>

using namespace steinlab;

TEST_CASE("hnf is canonical echelon with reduced entries") {
  Mat m = {{4, 6}, {2, 5}};
  Mat h = hnf(m);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == Row{2, 1});
  CHECK(h[1] == Row{0, 4});
  // permuting generators leaves the canonical form unchanged
  CHECK(hnf(Mat{{2, 5}, {4, 6}}) == h);
  CHECK(hnf(Mat{{2, 5}, {4, 6}, {6, 11}}) == h);
}

TEST_CASE("hnf drops zero rows and handles dependent input") {
  CHECK(hnf(Mat{{0, 0}, {0, 0}}).empty());
  Mat h = hnf(Mat{{2, 4}, {1, 2}, {3, 6}});
  REQUIRE(h.size() == 1);
  CHECK(h[0] == Row{1, 2});
}

TEST_CASE("left kernel and solve") {
  Mat b = {{2, 0}, {1, 1}};
  auto x = solve_left(b, Row{5, 3});
  REQUIRE(x.has_value());
  CHECK((*x)[0] * 2 + (*x)[1] * 1 == 5);
  CHECK((*x)[1] * 1 == 3);
  CHECK(!solve_left(Mat{{2, 0}}, Row{1, 0}).has_value());

  Mat k = left_kernel(Mat{{1, 2}, {2, 4}});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Row{2, -1});
}

TEST_CASE("saturation computes the primitive closure") {
  Mat s = saturation(Mat{{2, 0}}, 2);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == Row{1, 0});
  // already saturated
  CHECK(saturation(Mat{{2, 5}}, 2) == Mat{{2, 5}});
  // full rank saturates to the identity
  CHECK(saturation(Mat{{2, 0}, {0, 3}}, 2) == mat_identity(2));
}

TEST_CASE("snf invariant factors on knowns") {
  CHECK(snf_invariant_factors(Mat{{2, 4}, {6, 8}}) == std::vector<Int>{2, 4});
  CHECK(snf_invariant_factors(Mat{{1, 0}, {0, 1}}) == std::vector<Int>{1, 1});
  CHECK(snf_invariant_factors(Mat{{0, 0}, {0, 0}}).empty());
  CHECK(snf_invariant_factors(Mat{{6}}) == std::vector<Int>{6});
  // divisibility chain
  auto f = snf_invariant_factors(Mat{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
  REQUIRE(f.size() == 3);
  CHECK(f[0] == 1);
  CHECK(f[1] == 1);
  CHECK(f[2] == 30);
}

TEST_CASE("rank agrees between hnf and modular path") {
  Mat m = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  CHECK(mat_rank(m) == 2);
  CHECK(rank_mod_p(m, 1073741789ULL) == 2);
}

TEST_CASE("floor division and xgcd") {
  CHECK(fdiv(Int(-7), Int(2)) == -4);
  CHECK(fmod(Int(-7), Int(2)) == 1);
  Int s, t;
  CHECK(xgcd(Int(12), Int(18), s, t) == 6);
  CHECK(s * 12 + t * 18 == 6);
}
