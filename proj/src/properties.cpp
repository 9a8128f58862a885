#include "steinlab/properties.hpp"

#include "steinlab/partial_bases.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace steinlab {

namespace {

void add(std::vector<CheckResult>& out, const std::string& name, bool ok,
         const std::string& detail = "") {
  out.push_back({name, ok ? "PASS" : "FAIL", detail});
}

RingElem random_elem(SplitMix64& rng, long lo, long hi, bool quadratic) {
  RingElem e;
  e.a = rng.range(lo, hi);
  if (quadratic) e.b = rng.range(lo, hi);
  return e;
}

Ideal random_ideal(SplitMix64& rng, const RingDesc& ring) {
  for (;;) {
    std::vector<RingElem> gens;
    int k = static_cast<int>(rng.range(1, 2));
    for (int i = 0; i < k; ++i)
      gens.push_back(random_elem(rng, -6, 6, ring.is_quadratic()));
    bool all_zero = true;
    for (const auto& g : gens)
      if (!re_is_zero(g)) all_zero = false;
    if (all_zero) continue;
    return ideal_from_generators(ring, gens);
  }
}

SimplicialComplex random_complex(SplitMix64& rng, int verts, int tries) {
  SimplicialComplex x;
  for (int i = 0; i < verts; ++i) x.add_vertex("v" + std::to_string(i));
  for (int t = 0; t < tries; ++t) {
    int sz = static_cast<int>(rng.range(1, 4));
    std::vector<int> s;
    for (int i = 0; i < sz; ++i) s.push_back(static_cast<int>(rng.range(0, verts - 1)));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    x.add_simplex(s);
  }
  return x;
}

Chain random_chain(SplitMix64& rng, const SimplicialComplex& x, int d) {
  Chain c;
  c.degree = d;
  auto ss = x.simplices(d);
  if (ss.empty()) return c;
  for (int t = 0; t < 4; ++t) {
    const Simplex& s = ss[rng.range(0, static_cast<long long>(ss.size()) - 1)];
    c.add(s, rng.range(-3, 3));
  }
  return c;
}

Int dense_det(Mat m) {
  // Bareiss fraction-free elimination
  int n = static_cast<int>(m.size());
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

std::vector<Int> dense_snf_reference(Mat m) {
  // textbook elimination: bring the minimal entry to the corner, clear its
  // row and column, restart on divisibility failures
  std::vector<Int> diag;
  int top = 0;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  while (top < rows && top < cols) {
    // find minimal nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = top; i < rows; ++i)
      for (int j = top; j < cols; ++j)
        if (m[i][j] != 0 && (pi < 0 || abs(m[i][j]) < abs(m[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    std::swap(m[top], m[pi]);
    for (int i = top; i < rows; ++i) std::swap(m[i][top], m[i][pj]);
    bool dirty = false;
    for (int i = top + 1; i < rows; ++i) {
      if (m[i][top] == 0) continue;
      Int q = m[i][top] / m[top][top];
      for (int j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
      if (m[i][top] != 0) dirty = true;
    }
    for (int j = top + 1; j < cols; ++j) {
      if (m[top][j] == 0) continue;
      Int q = m[top][j] / m[top][top];
      for (int i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
      if (m[top][j] != 0) dirty = true;
    }
    if (dirty) continue;
    // divisibility: fold in any non-divisible entry and restart
    bool folded = false;
    for (int i = top + 1; i < rows && !folded; ++i)
      for (int j = top + 1; j < cols && !folded; ++j)
        if (m[i][j] % m[top][top] != 0) {
          for (int jj = top; jj < cols; ++jj) m[top][jj] += m[i][jj];
          folded = true;
        }
    if (folded) continue;
    diag.push_back(abs(m[top][top]));
    ++top;
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<CheckResult> arith_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  SplitMix64 rng(seed ^ 0xa17f5u);
  std::vector<RingDesc> rings = {RingDesc::imag_quadratic(-5),
                                 RingDesc::imag_quadratic(-23)};

  bool comm = true, assoc = true, normmul = true, conjprin = true;
  for (const auto& ring : rings) {
    for (int t = 0; t < 25; ++t) {
      Ideal a = random_ideal(rng, ring), b = random_ideal(rng, ring), c = random_ideal(rng, ring);
      if (!(ideal_product(a, b) == ideal_product(b, a))) comm = false;
      if (!(ideal_product(ideal_product(a, b), c) == ideal_product(a, ideal_product(b, c))))
        assoc = false;
      if (ideal_product(a, b).norm() != a.norm() * b.norm()) normmul = false;
      Ideal pc = ideal_product(a, ideal_conjugate(a));
      RingElem nrm = re_from_int(a.norm());
      if (!(pc == ideal_principal(ring, nrm))) conjprin = false;
    }
  }
  add(out, "ideal_product commutative", comm);
  add(out, "ideal_product associative", assoc);
  add(out, "norm multiplicative on products", normmul);
  add(out, "I * conj(I) = (norm I)", conjprin);

  // class groups with h = 1..8: exhaustive group axioms
  std::vector<std::pair<long, int>> table = {{-1, 1}, {-5, 2}, {-23, 3}, {-14, 4},
                                             {-47, 5}, {-26, 6}, {-71, 7}, {-41, 8}};
  bool orders_ok = true, axioms_ok = true, hom_ok = true;
  for (const auto& [d, h] : table) {
    ClassGroup cg = class_group(RingDesc::imag_quadratic(d));
    if (cg.order != h) orders_ok = false;
    for (int i = 0; i < cg.order && axioms_ok; ++i) {
      if (cg.cls_add(i, 0) != i || cg.cls_add(0, i) != i) axioms_ok = false;
      bool has_inv = false;
      for (int j = 0; j < cg.order; ++j)
        if (cg.cls_add(i, j) == 0) has_inv = true;
      if (!has_inv) axioms_ok = false;
      for (int j = 0; j < cg.order; ++j)
        for (int k = 0; k < cg.order; ++k)
          if (cg.cls_add(cg.cls_add(i, j), k) != cg.cls_add(i, cg.cls_add(j, k)))
            axioms_ok = false;
    }
    for (int i = 0; i < cg.order; ++i)
      for (int j = 0; j < cg.order; ++j) {
        IdealClass prod = ideal_class(ideal_product(cg.reps[i], cg.reps[j]), cg);
        if (prod.index != cg.cls_add(i, j)) hom_ok = false;
      }
  }
  add(out, "class numbers h(-1..-41) = 1..8", orders_ok);
  add(out, "class group table is an abelian group (h <= 8)", axioms_ok);
  add(out, "ideal_class is multiplicative on representatives", hom_ok);
  return out;
}

std::vector<CheckResult> lattice_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  SplitMix64 rng(seed ^ 0x1a77u);
  RingDesc z5 = RingDesc::imag_quadratic(-5);
  RingDesc zz = RingDesc::integers();
  ClassGroup cg5 = class_group(z5);
  ClassGroup cgz = class_group(zz);

  bool idem = true, mono = true, sat_summand = true, inter_summand = true;
  for (int t = 0; t < 30; ++t) {
    const RingDesc& ring = (t % 2 == 0) ? z5 : zz;
    int n = 2 + static_cast<int>(rng.range(0, 1));
    std::vector<OVector> vs;
    int k = 1 + static_cast<int>(rng.range(0, n - 1));
    for (int i = 0; i < k; ++i) {
      OVector v;
      for (int j = 0; j < n; ++j) v.c.push_back(random_elem(rng, -3, 3, ring.is_quadratic()));
      vs.push_back(v);
    }
    ModuleLattice span = module_span(ring, n, vs);
    if (span.is_zero()) continue;
    ModuleLattice sat = module_saturate(span);
    if (!(module_saturate(sat) == sat)) idem = false;
    if (!module_subset(span, sat) || span.orank() != sat.orank()) mono = false;
    if (!is_summand(sat, full_module(ring, n))) sat_summand = false;
  }
  add(out, "saturate is idempotent", idem);
  add(out, "saturate is monotone with equal O-rank", mono);
  add(out, "saturation of a sublattice is a summand", sat_summand);

  // Steinitz additivity on direct sums of rank-1 summands
  bool additive = true;
  {
    ModuleLattice full3 = full_module(z5, 3);
    std::vector<ModuleLattice> r1 = rank1_summands(full3, 2);
    int checked = 0;
    for (size_t i = 0; i < r1.size() && checked < 40; ++i)
      for (size_t j = i + 1; j < r1.size() && checked < 40; ++j) {
        ModuleLattice inter = lattice_intersection(r1[i], r1[j]);
        if (!inter.is_zero()) continue;
        ModuleLattice sum = module_sum(r1[i], r1[j]);
        if (sum.orank() != 2) continue;
        // the sum need not be saturated; Steinitz is defined for any lattice
        int lhs = steinitz_class(sum, cg5).index;
        int rhs = cg5.cls_add(steinitz_class(r1[i], cg5).index,
                              steinitz_class(r1[j], cg5).index);
        if (lhs != rhs) additive = false;
        ++checked;
      }
  }
  add(out, "Steinitz class is additive on direct sums", additive);

  // intersection of two summands is a summand
  {
    ModuleLattice full3z = full_module(zz, 3);
    std::vector<ModuleLattice> cand;
    SplitMix64 rng2(seed ^ 0x99u);
    for (int t = 0; t < 60; ++t) {
      int k = 1 + static_cast<int>(rng2.range(0, 1));
      std::vector<OVector> vs;
      for (int i = 0; i < k; ++i) {
        OVector v;
        for (int j = 0; j < 3; ++j) v.c.push_back(random_elem(rng2, -3, 3, false));
        vs.push_back(v);
      }
      ModuleLattice s = span_and_saturate(zz, 3, vs);
      if (!s.is_zero()) cand.push_back(s);
    }
    for (size_t i = 0; i + 1 < cand.size(); i += 2) {
      ModuleLattice inter = lattice_intersection(cand[i], cand[i + 1]);
      if (inter.is_zero()) continue;
      if (!is_summand(inter, full3z)) inter_summand = false;
    }
  }
  add(out, "intersection of summands is a summand", inter_summand);

  // partial-basis criterion: completable iff span is a rank-k summand (and
  // the Steinitz class of such a span is automatically trivial)
  bool crit = true;
  {
    PBSpec spec;
    spec.ring = z5;
    spec.n = 2;
    spec.kind = PBSpec::IdealKind::Unit;
    spec.height = 6;
    spec.search_height = 12;
    std::vector<OVector> all = enumerate_unimodular(spec);
    int tested = 0;
    for (const auto& v : all) {
      if (tested >= 25) break;
      ++tested;
      MembershipVerdict m = certify_I_simplex({v}, spec);
      ModuleLattice span = module_span(z5, 2, {v});
      bool summand = module_saturate(span) == span;
      bool completable = m.kind == MembershipVerdict::Kind::Yes;
      if (m.kind == MembershipVerdict::Kind::Unknown) continue;
      if (completable != summand) crit = false;
      if (summand && steinitz_class(span, cg5).index != 0) crit = false;
    }
    // a non-saturated span must be rejected: (2, 1+w) over Z[sqrt(-5)]
    OVector bad;
    bad.c = {RingElem{2, 0}, RingElem{1, 1}};
    ModuleLattice bspan = module_span(z5, 2, {bad});
    if (module_saturate(bspan) == bspan) crit = false;
  }
  add(out, "partial-basis criterion matches summand test", crit);
  (void)cgz;
  return out;
}

std::vector<CheckResult> topo_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  SplitMix64 rng(seed ^ 0x70b0u);

  bool dd = true, bary_chain_map = true, push_chain_map = true;
  for (int t = 0; t < 20; ++t) {
    SimplicialComplex x = random_complex(rng, 6, 8);
    int d = std::min(2, x.dim());
    if (d < 1) continue;
    Chain c = random_chain(rng, x, d);
    Chain b1 = boundary(x, c);
    Chain b2 = boundary_formal(b1);
    if (!b2.is_zero()) dd = false;
    // barycentric subdivision commutes with the boundary
    KeyIndexer idx;
    Chain bc = barycentric_chain(x, c, idx);
    Chain lhs = boundary_formal(bc);
    Chain rhs = barycentric_chain(x, boundary(x, c), idx);
    if (!(lhs == rhs)) bary_chain_map = false;
    // pushforward along a relabeling is a chain map
    std::vector<int> relabel(x.labels.size());
    std::iota(relabel.begin(), relabel.end(), 0);
    std::reverse(relabel.begin(), relabel.end());
    Chain pc = push_chain(c, [&](int v) { return relabel[v]; });
    Chain plhs = boundary_formal(pc);
    Chain prhs = push_chain(boundary(x, c), [&](int v) { return relabel[v]; });
    if (!(plhs == prhs)) push_chain_map = false;
  }
  add(out, "boundary of boundary vanishes", dd);
  add(out, "barycentric chain map commutes with boundary", bary_chain_map);
  add(out, "pushforward commutes with boundary", push_chain_map);

  // SNF oracle equivalence and determinant identity
  bool snf_oracle = true, snf_det = true;
  for (int t = 0; t < 60; ++t) {
    int rows = 1 + static_cast<int>(rng.range(0, 7));
    int cols = 1 + static_cast<int>(rng.range(0, 7));
    Mat m(rows, Row(cols));
    for (auto& r : m)
      for (auto& v : r) v = rng.range(-9, 9);
    if (snf_invariant_factors(m) != dense_snf_reference(m)) snf_oracle = false;
    if (rows == cols) {
      Int det = dense_det(m);
      if (det != 0) {
        Int prod = 1;
        for (const auto& f : snf_invariant_factors(m)) prod *= f;
        if (prod != abs(det)) snf_det = false;
      }
    }
  }
  add(out, "sparse SNF matches the dense reference", snf_oracle);
  add(out, "product of invariant factors equals |det|", snf_det);

  // cones are acyclic
  bool cones = true;
  for (int t = 0; t < 8; ++t) {
    SimplicialComplex x = random_complex(rng, 5, 6);
    if (x.empty()) continue;
    SimplicialComplex cn = cone(x, "apex");
    HomologySummary hs = reduced_homology(cn);
    for (int d = 0; d <= cn.dim(); ++d)
      if (hs.betti_at(d) != 0 || !hs.torsion[d].empty()) cones = false;
  }
  add(out, "cones are acyclic in reduced homology", cones);

  // modular-rank fast path agrees with the exact rank
  bool modrank = true;
  for (int t = 0; t < 20; ++t) {
    int rows = 1 + static_cast<int>(rng.range(0, 5));
    int cols = 1 + static_cast<int>(rng.range(0, 5));
    Mat m(rows, Row(cols));
    for (auto& r : m)
      for (auto& v : r) v = rng.range(-4, 4);
    // a random 30-bit prime would do; the fixed one keeps the suite
    // deterministic and misses ranks only on matrices with huge minors
    if (rank_mod_p(m, 1073741789ULL) != mat_rank(m)) modrank = false;
  }
  add(out, "modular rank fast path agrees with exact rank", modrank);

  // fibered transfer spot-check: double fiber over the boundary of a simplex
  {
    SimplicialComplex y;
    for (int i = 0; i < 4; ++i) y.add_vertex("y" + std::to_string(i));
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) y.add_simplex({a, b, c});  // boundary of a 3-simplex
    SimplicialComplex x;
    for (int i = 0; i < 4; ++i) x.add_vertex("a" + std::to_string(i));
    for (int i = 0; i < 4; ++i) x.add_vertex("b" + std::to_string(i));
    auto f = [&](int v) { return v % 4; };
    std::set<int> core;
    for (int i = 0; i < 4; ++i) core.insert(i);  // the a-copies
    // build x by the fibered condition itself
    std::vector<int> verts(8);
    std::iota(verts.begin(), verts.end(), 0);
    for (int m1 = 1; m1 < 256; ++m1) {
      std::vector<int> u;
      for (int i = 0; i < 8; ++i)
        if (m1 & (1 << i)) u.push_back(i);
      if (u.size() > 3) continue;
      std::set<int> img;
      for (int v : u) img.insert(f(v));
      if (img.size() != u.size()) continue;
      Simplex imgs(img.begin(), img.end());
      if (!y.has_simplex(imgs)) continue;
      bool maximal = imgs.size() == 3;
      bool meets = false;
      for (int v : u)
        if (core.count(v)) meets = true;
      if (maximal && !meets) continue;
      x.add_simplex(u);
    }
    bool fib = check_fibered(x, y, f, core);
    bool fib_top = fibered_top_criterion(x, y, f, core);
    bool y_cm = is_hlevel_cm(y, 2);
    bool x_cm = is_hlevel_cm(x, 2);
    add(out, "fibered predicate holds on the fiber construction", fib && fib_top);
    add(out, "CM transfers along fibered maps (H-level spot check)", y_cm && x_cm);
    // removing one core-meeting top simplex must break the predicate
    SimplicialComplex broken;
    broken.labels = x.labels;
    broken.vertex_ids = x.vertex_ids;
    bool removed = false;
    for (int d = x.dim(); d >= 0; --d)
      for (const auto& s : x.simplices(d)) {
        if (d == x.dim() && !removed) {
          bool meets = false;
          for (int v : s)
            if (core.count(v)) meets = true;
          if (meets) { removed = true; continue; }
        }
        broken.add_simplex(s);
      }
    add(out, "dropping a required top simplex breaks the fibered predicate",
        removed && !check_fibered(broken, y, f, core));
  }
  return out;
}

std::vector<CheckResult> building_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  (void)seed;

  // apartment chains are cycles (all modes)
  bool cycles = true;
  {
    BuildingPoset b23 = tits_building_field(2, 3);
    SimplicialComplex cx = b23.complex();
    FieldFrame f;
    f.lines = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Chain a = apartment_class_field(f, b23);
    if (!boundary(cx, a).is_zero()) cycles = false;
    FieldFrame g;
    g.lines = {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}};
    if (!boundary(cx, apartment_class_field(g, b23)).is_zero()) cycles = false;
  }
  {
    RingDesc z5 = RingDesc::imag_quadratic(-5);
    ModuleLattice m = full_module(z5, 2);
    ModuleFrame f;
    OVector e1, e2;
    e1.c = {re_one(), re_zero()};
    e2.c = {re_zero(), re_one()};
    f.constituents = {span_and_saturate(z5, 2, {e1}), span_and_saturate(z5, 2, {e2})};
    ApartmentChainResult ap = apartment_class_module(f, m);
    if (!boundary_formal(ap.chain).is_zero()) cycles = false;
  }
  {
    BuildingPoset xb = x_building(2, {"0", "1"});
    XApartmentSpec s;
    s.pairs = {{"0", "1"}, {"0", "1"}};
    Chain a = x_apartment_class(s, xb);
    if (!boundary(xb.complex(), a).is_zero()) cycles = false;
  }
  add(out, "apartment chains are cycles in all modes", cycles);

  // field mode: apartment classes span, and those containing a fixed chamber
  // form a basis
  bool spans = true, fixed_basis = true;
  for (auto [q, n] : std::vector<std::pair<long, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    BuildingPoset b = tits_building_field(q, n);
    SimplicialComplex cx = b.complex();
    std::vector<Simplex> chambers = cx.simplices(n - 2);
    std::map<Simplex, int> cidx;
    for (size_t i = 0; i < chambers.size(); ++i) cidx[chambers[i]] = static_cast<int>(i);
    // enumerate frames: unordered sets of n independent lines
    std::vector<std::vector<int>> line_ids;
    std::vector<FVec> line_gen;
    for (size_t e = 0; e < b.keys.size(); ++e)
      if (b.heights[e] == 0) {
        int code = b.subspaces[e][0];
        FVec v(n);
        int c = code;
        for (int i = n - 1; i >= 0; --i) {
          v[i] = c % static_cast<int>(q);
          c /= static_cast<int>(q);
        }
        line_gen.push_back(v);
      }
    Mat all_rows;
    Mat fixed_rows;
    const Simplex* fixed_chamber = chambers.empty() ? nullptr : &chambers[0];
    std::vector<int> pick(n);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == n) {
        FieldFrame f;
        for (int i = 0; i < n; ++i) f.lines.push_back(line_gen[pick[i]]);
        long qn = 1;
        for (int i = 0; i < n; ++i) qn *= q;
        if (static_cast<long>(span_points(f.lines, q, n).size()) + 1 != qn) return;
        Chain a = apartment_class_field(f, b);
        Row row(chambers.size(), 0);
        for (const auto& [k, v] : a.coeffs) row[cidx.at(k)] = v;
        all_rows.push_back(row);
        if (fixed_chamber && a.coeffs.count(*fixed_chamber)) fixed_rows.push_back(row);
        return;
      }
      for (int i = start; i < static_cast<int>(line_gen.size()); ++i) {
        pick[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    long long st_rank = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) st_rank *= q;
    if (mat_rank(all_rows) != st_rank) spans = false;
    if (static_cast<long long>(fixed_rows.size()) != st_rank) fixed_basis = false;
    if (mat_rank(fixed_rows) != st_rank) fixed_basis = false;
  }
  add(out, "apartment classes span the Steinberg module (field mode)", spans);
  add(out, "apartments through a fixed chamber form a basis", fixed_basis);

  // class-number-1 module mode: U_X of integral frames are plain direct sums
  bool ux_direct = true;
  {
    RingDesc zz = RingDesc::integers();
    ModuleLattice m = full_module(zz, 3);
    std::vector<ModuleLattice> r1 = rank1_summands(m, 1);
    int frames = 0;
    for (size_t i = 0; i < r1.size() && frames < 12; ++i)
      for (size_t j = i + 1; j < r1.size() && frames < 12; ++j)
        for (size_t k = j + 1; k < r1.size() && frames < 12; ++k) {
          ModuleFrame f;
          f.constituents = {r1[i], r1[j], r1[k]};
          ModuleLattice total = module_sum(module_sum(r1[i], r1[j]), r1[k]);
          if (total.orank() != 3) continue;
          if (!(total == m)) continue;
          ++frames;
          for (int mask = 1; mask < 7; ++mask) {
            ModuleLattice acc = zero_module(zz, 3);
            for (int t = 0; t < 3; ++t)
              if (mask & (1 << t)) acc = module_sum(acc, f.constituents[t]);
            if (!(module_saturate(acc) == acc)) ux_direct = false;
          }
        }
    if (frames == 0) ux_direct = false;
  }
  add(out, "integral-frame summands need no saturation over class number 1", ux_direct);

  // X building homology matches the join formula
  bool xjoin = true;
  for (auto [m, tsz] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    std::vector<std::string> t;
    for (int i = 0; i < tsz; ++i) t.push_back(std::to_string(i));
    BuildingPoset xb = x_building(m, t);
    HomologySummary hs = reduced_homology(xb.complex());
    long long expect = 1;
    for (int i = 0; i < m; ++i) expect *= (tsz - 1);
    if (hs.betti_at(m - 1) != expect) xjoin = false;
    for (int d = 0; d < m - 1; ++d)
      if (hs.betti_at(d) != 0 || !hs.torsion[d].empty()) xjoin = false;
  }
  add(out, "X building homology matches the join formula", xjoin);
  return out;
}

std::vector<CheckResult> steinberg_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  SplitMix64 rng(seed ^ 0x57e1u);

  // phi equals the apartment class up to the fixed (-1)^(n-1) convention
  bool phi_factor = true, phi_sign = true;
  for (auto [q, n] : std::vector<std::pair<long, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    BuildingPoset b = tits_building_field(q, n);
    // a handful of bases per building
    std::vector<std::vector<FVec>> bases;
    if (n == 2)
      bases = {{{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}, {{1, static_cast<int>(q - 1)}, {1, 0}}};
    else
      bases = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
               {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}},
               {{1, 0, 1}, {0, 1, 0}, {1, 1, 0}}};
    for (const auto& basis : bases) {
      Chain phi = phi_map_field(basis, b);
      FieldFrame f;
      f.lines = basis;
      Chain ap = apartment_class_field(f, b);
      Chain expect = (n % 2 == 1) ? ap : chain_neg(ap);
      if (!(phi == expect)) phi_factor = false;
      // reordering the basis flips by the sign of the permutation
      std::vector<FVec> swapped = basis;
      std::swap(swapped[0], swapped[1]);
      Chain phi2 = phi_map_field(swapped, b);
      if (!(phi2 == chain_neg(phi))) phi_sign = false;
    }
  }
  add(out, "phi equals the apartment class under the orientation convention", phi_factor);
  add(out, "phi is alternating in the basis order", phi_sign);

  // good permutation family and bad profiles
  bool good_counts = true, family = true, bad_profile = true, invol = true;
  for (int n = 1; n <= 8; ++n) {
    auto goods = good_perms(n);
    if (static_cast<long long>(goods.size()) != (1LL << (n - 1))) good_counts = false;
    std::set<std::vector<int>> gset(goods.begin(), goods.end());
    if (gset.size() != goods.size()) family = false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    long long good_seen = 0;
    do {
      PermProfile p = classify_perm(perm);
      if (p.good) {
        ++good_seen;
        if (!gset.count(perm)) family = false;
      } else if (n <= 7) {
        for (int k = p.x; k < p.y; ++k)
          if (p.s[k - 1] != k + 1) bad_profile = false;
        PermProfile q = bad_involution(p);
        if (q.good || q.s != p.s || q.x != p.x || q.y != p.y) invol = false;
        PermProfile back = bad_involution(q);
        if (back.word != p.word) invol = false;
        if (q.word == p.word) invol = false;  // fixed-point free
        if (perm_sign(q.word) != -perm_sign(p.word)) invol = false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (good_seen != (1LL << (n - 1))) good_counts = false;
  }
  add(out, "good permutations number 2^(n-1) and match the family (n <= 8)", good_counts && family);
  add(out, "bad permutations have s(k) = k+1 between x and y (n <= 7)", bad_profile);
  add(out, "bad involution is s-preserving, sign-reversing, fixed-point free (n <= 7)", invol);

  // psi split and pairwise bad cancellation on a folded frame
  bool psi_split = true, pairwise = true;
  {
    RingDesc z5 = RingDesc::imag_quadratic(-5);
    ClassGroup cg = class_group(z5);
    BuildingPoset xb = x_building(1, {"0", "1"});
    XApartmentSpec s;
    s.pairs = {{"0", "1"}};
    SearchBudget budget;
    FoldedFrameCertificate cert =
        construct_folded_frame(full_module(z5, 2), s, cg, xb, budget, seed);
    if (!cert.success) psi_split = false;
    Chain sum = chain_sub(cert.psi_image, cert.psi_good);
    if (!(sum == cert.psi_bad)) psi_split = false;

    // pairwise form of the cancellation at n = 3: for each bad sigma the
    // image chamber agrees with the image chamber of sigma-bar, with
    // opposite signs
    BuildingPoset xb2 = x_building(2, {"0", "1"});
    XApartmentSpec s2;
    s2.pairs = {{"0", "1"}, {"1", "0"}};
    FoldedFrameCertificate cert3 =
        construct_folded_frame(full_module(z5, 3), s2, cg, xb2, budget, seed);
    if (!cert3.success) {
      pairwise = false;
    } else {
      auto psi_chamber = [&](const std::vector<int>& perm) {
        Simplex flag;
        std::vector<int> sub;
        for (int i = 0; i < 2; ++i) {
          sub.push_back(perm[i] - 1);
          std::vector<int> sorted_sub = sub;
          std::sort(sorted_sub.begin(), sorted_sub.end());
          Mat rows;
          for (int ix : sorted_sub)
            for (const auto& row : cert3.frame.constituents[ix].basis) rows.push_back(row);
          ModuleLattice u = module_saturate(module_from_rows(z5, 3, rows, false));
          int id = xb2.index_of("(" + std::to_string(u.orank()) + "," +
                                std::to_string(steinitz_class(u, cg).index) + ")");
          flag.push_back(id);
        }
        return flag;
      };
      std::vector<int> perm = {1, 2, 3};
      do {
        PermProfile p = classify_perm(perm);
        if (p.good) continue;
        PermProfile q = bad_involution(p);
        if (psi_chamber(p.word) != psi_chamber(q.word)) pairwise = false;
        if (perm_sign(p.word) != -perm_sign(q.word)) pairwise = false;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  add(out, "psi image splits into good part plus cancelling bad part", psi_split);
  add(out, "bad chambers cancel pairwise under the involution", pairwise);

  // orientation flip: swapping two frame lines negates the apartment chain
  bool flip = true;
  {
    BuildingPoset b = tits_building_field(3, 2);
    FieldFrame f;
    f.lines = {{1, 0}, {0, 1}};
    Chain a = apartment_class_field(f, b);
    FieldFrame g;
    g.lines = {{0, 1}, {1, 0}};
    // same frame as a set: the representative flips with the input ordering
    if (!(apartment_class_field(g, b) == chain_neg(a))) flip = false;
    // an element exchanging the two lines acts by -1 on the class
    SimplicialComplex cx = b.complex();
    std::vector<Simplex> chambers = cx.simplices(0);
    std::vector<FVec> swap_mat = {{0, 1}, {1, 0}};
    SignedPerm act = gl_action_on_chambers(swap_mat, b, chambers);
    Chain moved;
    moved.degree = a.degree;
    for (const auto& [k, v] : a.coeffs) {
      Simplex img;
      for (int vv : k) img.push_back(act.to[vv]);
      moved.add_oriented(std::move(img), v);
    }
    if (!(moved == chain_neg(a))) flip = false;
  }
  add(out, "swapping two frame lines reverses the apartment orientation", flip);

  // coinvariants vanish at field scale (the vanishing mechanism)
  add(out, "Steinberg coinvariants vanish for GL_2(F_2)", steinberg_coinvariants_dim(2, 2) == 0);
  return out;
}

std::vector<CheckResult> partial_bases_properties(std::uint64_t seed) {
  std::vector<CheckResult> out;
  (void)seed;
  RingDesc zz = RingDesc::integers();

  // certificates re-verify
  bool reverify = true;
  {
    PBSpec spec;
    spec.ring = zz;
    spec.n = 2;
    spec.kind = PBSpec::IdealKind::Proper;
    spec.ideal = ideal_principal(zz, re_from_int(5));
    spec.height = 3;
    spec.search_height = 30;
    BuildStats st;
    SimplicialComplex cx = build_complex(spec, &st);
    (void)cx;
    for (const auto& [label, cert] : st.certificates) {
      // recover the simplex vectors from the label
      std::vector<OVector> simplex;
      std::istringstream is(label);
      std::string tok;
      while (is >> tok) simplex.push_back(parse_ovector(tok, spec.n));
      if (!verify_certificate(cert, simplex, spec)) reverify = false;
    }
    if (st.certificates.empty()) reverify = false;
  }
  add(out, "Yes certificates re-verify independently", reverify);

  // B_n(0) is the full subcomplex of B_n(O) on vertices with L in {0, 1}
  bool full_sub = true;
  {
    PBSpec zero_spec;
    zero_spec.ring = zz;
    zero_spec.n = 3;
    zero_spec.kind = PBSpec::IdealKind::Zero;
    zero_spec.height = 2;
    zero_spec.search_height = 6;
    BuildStats st0;
    SimplicialComplex b0 = build_complex(zero_spec, &st0);
    PBSpec unit_spec = zero_spec;
    unit_spec.kind = PBSpec::IdealKind::Unit;
    BuildStats stu;
    SimplicialComplex bu = build_complex(unit_spec, &stu);
    // no Unknowns at these bounds, else the comparison is vacuous
    for (int d = 0; d < 3; ++d)
      if (st0.unknown[d] != 0 || stu.unknown[d] != 0) full_sub = false;
    // vertices of b0 = vertices of bu with L in {0,1}; simplices agree on them
    for (int d = 0; d <= bu.dim() && full_sub; ++d)
      for (const auto& s : bu.simplices(d)) {
        bool all01 = true;
        for (int v : s) {
          OVector ov = parse_ovector(bu.labels[v], 3);
          RingElem l = l_value(ov);
          if (!(re_is_zero(l) || l == re_one())) all01 = false;
        }
        if (!all01) continue;
        Simplex key;
        bool vertex_missing = false;
        for (int v : s) {
          int id = b0.vertex(bu.labels[v]);
          if (id < 0) vertex_missing = true;
          else key.push_back(id);
        }
        std::sort(key.begin(), key.end());
        if (vertex_missing || !b0.has_simplex(key)) full_sub = false;
      }
    for (int d = 0; d <= b0.dim() && full_sub; ++d)
      for (const auto& s : b0.simplices(d)) {
        Simplex key;
        for (int v : s) key.push_back(bu.vertex(b0.labels[v]));
        std::sort(key.begin(), key.end());
        if (!bu.has_simplex(key)) full_sub = false;
      }
  }
  add(out, "B_n(0) is the full subcomplex on L-value {0,1} vertices", full_sub);

  // Z_n (vertices with L = 0) is isomorphic to B_{n-1}(O) via dropping the
  // last coordinate
  bool zn_iso = true;
  {
    PBSpec zero_spec;
    zero_spec.ring = zz;
    zero_spec.n = 3;
    zero_spec.kind = PBSpec::IdealKind::Zero;
    zero_spec.height = 2;
    zero_spec.search_height = 6;
    SimplicialComplex b0 = build_complex(zero_spec, nullptr);
    PBSpec small;
    small.ring = zz;
    small.n = 2;
    small.kind = PBSpec::IdealKind::Unit;
    small.height = 2;
    small.search_height = 6;
    SimplicialComplex b2 = build_complex(small, nullptr);
    // collect Z_n simplices, drop the last coordinate, compare
    std::set<std::vector<std::string>> zn_simps, b2_simps;
    for (int d = 0; d <= b0.dim(); ++d)
      for (const auto& s : b0.simplices(d)) {
        bool zero_l = true;
        std::vector<std::string> names;
        for (int v : s) {
          OVector ov = parse_ovector(b0.labels[v], 3);
          if (!re_is_zero(l_value(ov))) zero_l = false;
          OVector drop;
          drop.c = {ov.c[0], ov.c[1]};
          names.push_back(ovector_to_string(drop));
        }
        if (!zero_l) continue;
        std::sort(names.begin(), names.end());
        zn_simps.insert(names);
      }
    for (int d = 0; d <= b2.dim(); ++d)
      for (const auto& s : b2.simplices(d)) {
        std::vector<std::string> names;
        for (int v : s) names.push_back(b2.labels[v]);
        std::sort(names.begin(), names.end());
        b2_simps.insert(names);
      }
    if (zn_simps != b2_simps) zn_iso = false;
  }
  add(out, "Z_n matches B_(n-1)(O) under the last-coordinate drop", zn_iso);

  // monotonicity in the ideal
  bool monotone = true;
  {
    PBSpec spec_i;
    spec_i.ring = zz;
    spec_i.n = 2;
    spec_i.kind = PBSpec::IdealKind::Proper;
    spec_i.ideal = ideal_principal(zz, re_from_int(10));
    spec_i.height = 3;
    spec_i.search_height = 30;
    PBSpec spec_j = spec_i;
    spec_j.ideal = ideal_principal(zz, re_from_int(5));
    BuildStats sti;
    SimplicialComplex bi = build_complex(spec_i, &sti);
    for (const auto& [label, cert] : sti.certificates) {
      std::vector<OVector> simplex;
      std::istringstream is(label);
      std::string tok;
      while (is >> tok) simplex.push_back(parse_ovector(tok, 2));
      MembershipVerdict m = certify_I_simplex(simplex, spec_j);
      if (m.kind != MembershipVerdict::Kind::Yes) monotone = false;
    }
    (void)bi;
  }
  add(out, "certified simplices of B_n(I) are certified in B_n(J) for I inside J", monotone);

  // good subcomplex contains the (n-3)-skeleton: every vertex of B_3(5Z) has
  // a good complement
  bool skeleton = true;
  {
    PBSpec spec;
    spec.ring = zz;
    spec.n = 3;
    spec.kind = PBSpec::IdealKind::Proper;
    spec.ideal = ideal_principal(zz, re_from_int(5));
    spec.height = 2;
    spec.search_height = 8;
    int tested = 0;
    for (const auto& v : enumerate_unimodular(spec)) {
      if (!spec.residue_ok(l_value(v))) continue;
      MembershipVerdict m = certify_I_simplex({v}, spec);
      if (m.kind != MembershipVerdict::Kind::Yes) continue;
      if (tested >= 15) break;
      ++tested;
      std::string why;
      auto gc = find_good_complement({v}, spec, &why);
      if (!gc) skeleton = false;
    }
    if (tested == 0) skeleton = false;
  }
  add(out, "low-dimensional simplices admit good complements", skeleton);
  return out;
}

std::vector<CheckResult> run_property_suite(const std::string& name, std::uint64_t seed) {
  if (name == "arith") return arith_properties(seed);
  if (name == "lattices") return lattice_properties(seed);
  if (name == "topo") return topo_properties(seed);
  if (name == "buildings") return building_properties(seed);
  if (name == "steinberg") return steinberg_properties(seed);
  if (name == "partial-bases") return partial_bases_properties(seed);
  throw std::invalid_argument("unknown property suite: " + name);
}

std::vector<std::string> property_suite_names() {
  return {"arith", "lattices", "topo", "buildings", "steinberg", "partial-bases"};
}

}  // namespace steinlab
