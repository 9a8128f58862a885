#include "steinlab/partial_bases.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace steinlab {

bool PBSpec::residue_ok(const RingElem& x) const {
  switch (kind) {
    case IdealKind::Unit: return true;
    case IdealKind::Zero: return re_is_zero(x) || x == re_one();
    case IdealKind::Proper:
      return ideal.contains(x) || ideal.contains(re_sub(ring, x, re_one()));
  }
  return false;
}

std::string PBSpec::ideal_string() const {
  switch (kind) {
    case IdealKind::Unit: return "(1)";
    case IdealKind::Zero: return "(0)";
    case IdealKind::Proper: return ideal.to_string();
  }
  return "?";
}

RingElem l_value(const OVector& v) { return v.c.back(); }

namespace {

// Elements ordered small-first: by height, then |a|, sign, |b|, sign; gives
// 0, 1, -1, 2, -2, ... over Z.
std::vector<RingElem> search_order_elems(const RingDesc& ring, const Int& bound) {
  std::vector<RingElem> elems = enumerate_elems(ring, bound);
  std::sort(elems.begin(), elems.end(), [&](const RingElem& x, const RingElem& y) {
    Int hx = elem_height(ring, x), hy = elem_height(ring, y);
    if (hx != hy) return hx < hy;
    Int ax = abs(x.a), ay = abs(y.a);
    if (ax != ay) return ax < ay;
    if ((x.a < 0) != (y.a < 0)) return !(x.a < 0);
    Int bx = abs(x.b), by = abs(y.b);
    if (bx != by) return bx < by;
    return !(x.b < 0);
  });
  return elems;
}

// All vectors of vector_height <= bound with coordinates drawn from elems,
// ordered by (vector height, lexicographic element order).
std::vector<OVector> ordered_vectors(const RingDesc& ring, int n,
                                     const std::vector<RingElem>& elems,
                                     const Int& bound) {
  std::vector<std::pair<Int, std::vector<int>>> tuples;
  std::vector<int> cur(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      OVector v;
      for (int i : cur) v.c.push_back(elems[i]);
      Int h = vector_height(ring, v);
      if (h <= bound) tuples.push_back({h, cur});
      return;
    }
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
      cur[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  std::stable_sort(tuples.begin(), tuples.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return a.second < b.second;
                   });
  std::vector<OVector> out;
  out.reserve(tuples.size());
  for (const auto& [hh, idx] : tuples) {
    OVector v;
    for (int i : idx) v.c.push_back(elems[i]);
    out.push_back(std::move(v));
  }
  return out;
}

bool vector_is_zero(const OVector& v) {
  for (const auto& x : v.c)
    if (!re_is_zero(x)) return false;
  return true;
}

// span of the vectors is a rank-k summand of O^n; a rank-k summand generated
// by k elements is automatically free, so this is the partial-basis test
bool spans_rank_k_summand(const RingDesc& ring, int n, const std::vector<OVector>& vecs) {
  ModuleLattice span = module_span(ring, n, vecs);
  if (span.orank() != static_cast<int>(vecs.size())) return false;
  return module_saturate(span) == span;
}

struct LastStep {
  bool decided = false;   // true: yes/no is exact
  bool yes = false;
  OVector completion;
  std::vector<std::string> allowed_residues;
};

// Exact decision for completing a partial basis of size n-1 to an I-basis:
// the completions of a fixed determinant u form w_u + ker(lambda), so the
// achievable L-values mod I are computed exactly.
LastStep complete_last_exact(const std::vector<OVector>& vecs, const PBSpec& spec) {
  const RingDesc& ring = spec.ring;
  int n = spec.n;
  LastStep res;
  res.decided = true;

  // cofactors of the last row: det(v_1..v_{n-1}, w) = sum_j C_j w_j
  std::vector<RingElem> cof(n);
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<RingElem>> sub;
    for (int i = 0; i < n - 1; ++i) {
      std::vector<RingElem> row;
      for (int jj = 0; jj < n; ++jj)
        if (jj != j) row.push_back(vecs[i].c[jj]);
      sub.push_back(row);
    }
    RingElem mnr = (n >= 2) ? re_det(ring, sub) : re_one();
    int sgn = ((n - 1 + j) % 2 == 0) ? 1 : -1;
    cof[j] = sgn == 1 ? mnr : re_neg(ring, mnr);
  }

  // lambda as a Z-linear map Z^(w*n) -> Z^w
  int w = coord_width(ring);
  Mat lambda;
  RingElem omega{0, 1};
  for (int j = 0; j < n; ++j) {
    lambda.push_back(w == 1 ? Row{cof[j].a} : Row{cof[j].a, cof[j].b});
    if (w == 2) {
      RingElem cw = re_mul(ring, cof[j], omega);
      lambda.push_back(Row{cw.a, cw.b});
    }
  }
  Mat kernel = left_kernel(lambda);

  // L-values of the kernel basis, as congruence rows together with I
  Mat cong;
  std::vector<RingElem> kernel_l;
  for (const auto& krow : kernel) {
    RingElem lv = l_value(unembed_row(ring, krow));
    kernel_l.push_back(lv);
    cong.push_back(w == 1 ? Row{lv.a} : Row{lv.a, lv.b});
  }
  size_t kernel_rows = cong.size();
  if (spec.kind == PBSpec::IdealKind::Proper) {
    if (ring.kind == RingKind::Integers) {
      cong.push_back(Row{spec.ideal.m00});
    } else {
      cong.push_back(Row{spec.ideal.m00, spec.ideal.m01});
      cong.push_back(Row{Int(0), spec.ideal.m11});
    }
  }

  std::vector<std::pair<RingElem, OVector>> unit_solutions;  // (L(w_u), w_u)
  for (const RingElem& u : ring_units(ring)) {
    auto x = solve_left(lambda, w == 1 ? Row{u.a} : Row{u.a, u.b});
    if (!x) continue;  // cannot happen for genuine partial bases
    OVector wu = unembed_row(ring, *x);
    unit_solutions.push_back({l_value(wu), wu});
  }

  if (spec.kind == PBSpec::IdealKind::Unit) {
    // no congruence condition: any unit-determinant completion works
    if (!unit_solutions.empty()) {
      res.yes = true;
      res.completion = unit_solutions.front().second;
    }
    return res;
  }

  for (const auto& [lwu, wu] : unit_solutions) {
    for (int rtarget = 0; rtarget <= 1; ++rtarget) {
      RingElem target = re_sub(ring, re_from_int(rtarget), lwu);
      Row trow = w == 1 ? Row{target.a} : Row{target.a, target.b};
      auto coeffs = solve_left(cong, trow);
      if (!coeffs && !cong.empty()) continue;
      if (!coeffs) {
        // empty congruence lattice: target must be zero
        bool zero = true;
        for (const auto& t : trow)
          if (t != 0) zero = false;
        if (!zero) continue;
        coeffs = Row{};
      }
      // assemble w = w_u + sum coeff_i * kernel_i
      Row wrow = embed_vector(ring, wu);
      for (size_t i = 0; i < kernel_rows; ++i) {
        if ((*coeffs)[i] == 0) continue;
        for (size_t j = 0; j < wrow.size(); ++j)
          wrow[j] += (*coeffs)[i] * kernel[i][j];
      }
      OVector cand = unembed_row(ring, wrow);
      res.yes = true;
      res.completion = cand;
      return res;
    }
  }

  // exact No: collect the reachable residues when the quotient is small
  res.yes = false;
  if (spec.kind == PBSpec::IdealKind::Proper && spec.ideal.norm() <= 2000) {
    Mat cong_h = hnf(cong);
    std::set<std::string> reach;
    for (const auto& r : ideal_residues(spec.ideal)) {
      for (const auto& [lwu, wu] : unit_solutions) {
        RingElem diff = re_sub(ring, r, lwu);
        Row drow = w == 1 ? Row{diff.a} : Row{diff.a, diff.b};
        if (hnf_contains(cong_h, drow)) reach.insert(elem_to_string(r));
      }
    }
    res.allowed_residues.assign(reach.begin(), reach.end());
  }
  return res;
}

}  // namespace

std::vector<OVector> enumerate_unimodular(const PBSpec& spec) {
  std::vector<RingElem> elems = search_order_elems(spec.ring, spec.height);
  if (static_cast<double>(elems.size()) > 200 ||
      std::pow(static_cast<double>(elems.size()), spec.n) > 4e6)
    throw std::invalid_argument("enumerate_unimodular: bound too large");
  std::vector<OVector> out;
  for (const auto& v : ordered_vectors(spec.ring, spec.n, elems, spec.height)) {
    if (vector_is_zero(v)) continue;
    if (is_unimodular(spec.ring, v)) out.push_back(v);
  }
  return out;
}

MembershipVerdict certify_I_simplex(const std::vector<OVector>& vecs, const PBSpec& spec) {
  MembershipVerdict verdict;
  const RingDesc& ring = spec.ring;
  int n = spec.n;
  int k = static_cast<int>(vecs.size());
  if (k == 0 || k > n) throw std::invalid_argument("certify: simplex size out of range");

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (vecs[i] == vecs[j]) throw std::invalid_argument("certify: repeated vector");

  for (const auto& v : vecs) {
    if (vector_is_zero(v) || !is_unimodular(ring, v)) {
      verdict.kind = MembershipVerdict::Kind::No;
      verdict.reason = "vector is not unimodular";
      return verdict;
    }
    if (!spec.residue_ok(l_value(v))) {
      verdict.kind = MembershipVerdict::Kind::No;
      verdict.reason = "L-value not congruent to 0 or 1 mod I";
      return verdict;
    }
  }
  if (!spans_rank_k_summand(ring, n, vecs)) {
    verdict.kind = MembershipVerdict::Kind::No;
    verdict.reason = "span is not a rank-k direct summand";
    return verdict;
  }

  if (k == n) {
    if (module_span(ring, n, vecs) == full_module(ring, n)) {
      verdict.kind = MembershipVerdict::Kind::Yes;
      verdict.certificate = vecs;
    } else {
      verdict.kind = MembershipVerdict::Kind::No;
      verdict.reason = "determinant is not a unit";
    }
    return verdict;
  }

  // recursive completion; the final slot is decided exactly
  std::vector<OVector> candidates;
  bool candidates_ready = false;
  std::function<bool(std::vector<OVector>&)> extend = [&](std::vector<OVector>& cur) -> bool {
    if (static_cast<int>(cur.size()) == n - 1) {
      LastStep ls = complete_last_exact(cur, spec);
      if (ls.yes) {
        cur.push_back(ls.completion);
        return true;
      }
      if (static_cast<int>(cur.size()) == k && k == n - 1) {
        // the exact step already decided the whole query
        verdict.kind = MembershipVerdict::Kind::No;
        verdict.allowed_residues = ls.allowed_residues;
        std::ostringstream os;
        os << "no completion: reachable L-residues mod " << spec.ideal_string() << " are {";
        for (size_t i = 0; i < ls.allowed_residues.size(); ++i)
          os << (i ? "," : "") << ls.allowed_residues[i];
        os << "}";
        verdict.reason = os.str();
      }
      return false;
    }
    if (!candidates_ready) {
      PBSpec wide = spec;
      wide.height = spec.search_height;
      candidates = enumerate_unimodular(wide);
      candidates_ready = true;
    }
    for (const auto& w : candidates) {
      if (!spec.residue_ok(l_value(w))) continue;
      if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      std::vector<OVector> next = cur;
      next.push_back(w);
      if (!spans_rank_k_summand(ring, n, next)) continue;
      if (extend(next)) {
        cur = next;
        return true;
      }
      if (verdict.kind == MembershipVerdict::Kind::No) return false;
    }
    return false;
  };

  std::vector<OVector> cur = vecs;
  if (extend(cur)) {
    verdict.kind = MembershipVerdict::Kind::Yes;
    verdict.certificate = cur;
    return verdict;
  }
  if (verdict.kind == MembershipVerdict::Kind::No) return verdict;
  verdict.kind = MembershipVerdict::Kind::Unknown;
  verdict.reason = "completion search exhausted at height " + spec.search_height.str();
  return verdict;
}

bool verify_certificate(const std::vector<OVector>& basis,
                        const std::vector<OVector>& simplex, const PBSpec& spec) {
  if (static_cast<int>(basis.size()) != spec.n) return false;
  for (const auto& s : simplex)
    if (std::find(basis.begin(), basis.end(), s) == basis.end()) return false;
  for (const auto& v : basis)
    if (!spec.residue_ok(l_value(v))) return false;
  return module_span(spec.ring, spec.n, basis) == full_module(spec.ring, spec.n);
}

SimplicialComplex build_complex(const PBSpec& spec, BuildStats* stats) {
  SimplicialComplex cx;
  BuildStats local;
  BuildStats& st = stats ? *stats : local;
  st.certified.assign(spec.n, 0);
  st.rejected.assign(spec.n, 0);
  st.unknown.assign(spec.n, 0);

  std::vector<OVector> verts;
  for (const auto& v : enumerate_unimodular(spec)) {
    ++st.vertices_enumerated;
    if (!spec.residue_ok(l_value(v))) continue;
    MembershipVerdict m = certify_I_simplex({v}, spec);
    if (m.kind == MembershipVerdict::Kind::Yes) {
      ++st.certified[0];
      int id = cx.add_vertex(ovector_to_string(v));
      (void)id;
      cx.add_simplex({cx.vertex(ovector_to_string(v))});
      st.certificates[ovector_to_string(v)] = m.certificate;
      verts.push_back(v);
    } else if (m.kind == MembershipVerdict::Kind::No) {
      ++st.rejected[0];
    } else {
      ++st.unknown[0];
    }
  }

  // higher simplices: extend certified (d-1)-simplices by later vertices,
  // requiring all facets to be present first
  std::vector<std::vector<int>> level;  // vertex index lists, ascending
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) level.push_back({i});
  for (int d = 1; d < spec.n; ++d) {
    std::vector<std::vector<int>> next_level;
    std::set<std::vector<int>> seen;
    for (const auto& s : level) {
      for (int j = s.back() + 1; j < static_cast<int>(verts.size()); ++j) {
        std::vector<int> t = s;
        t.push_back(j);
        if (seen.count(t)) continue;
        seen.insert(t);
        // facet closure check inside the certified complex
        bool facets_ok = true;
        Simplex key;
        for (int ix : t) key.push_back(cx.vertex(ovector_to_string(verts[ix])));
        std::sort(key.begin(), key.end());
        for (size_t drop = 0; drop < t.size() && facets_ok; ++drop) {
          Simplex facet;
          for (size_t a = 0; a < key.size(); ++a)
            if (a != drop) facet.push_back(key[a]);
          if (!cx.has_simplex(facet)) facets_ok = false;
        }
        if (!facets_ok) continue;
        std::vector<OVector> vs;
        for (int ix : t) vs.push_back(verts[ix]);
        MembershipVerdict m = certify_I_simplex(vs, spec);
        if (m.kind == MembershipVerdict::Kind::Yes) {
          ++st.certified[d];
          cx.add_simplex(key);
          std::ostringstream lab;
          for (size_t a = 0; a < vs.size(); ++a)
            lab << (a ? " " : "") << ovector_to_string(vs[a]);
          st.certificates[lab.str()] = m.certificate;
          next_level.push_back(t);
        } else if (m.kind == MembershipVerdict::Kind::No) {
          ++st.rejected[d];
        } else {
          ++st.unknown[d];
        }
      }
    }
    level = std::move(next_level);
    if (level.empty()) break;
  }
  return cx;
}

std::optional<std::vector<RingElem>> reiner_complete(const RingDesc& ring,
                                                     const std::vector<RingElem>& b,
                                                     const Int& height_bound) {
  if (b.size() < 3) throw std::invalid_argument("reiner_complete: need length >= 3");
  if (re_is_zero(b[0])) throw std::invalid_argument("reiner_complete: b1 must be nonzero");
  if (!ideal_from_generators(ring, b).is_unit_ideal())
    throw std::invalid_argument("reiner_complete: generators must span the unit ideal");
  int slots = static_cast<int>(b.size()) - 2;
  std::vector<RingElem> elems = search_order_elems(ring, height_bound);
  std::vector<int> pick(slots, 0);
  // graded product order: maximize over slots of element index order
  std::vector<std::vector<int>> tuples;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == slots) {
      tuples.push_back(pick);
      return;
    }
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
      pick[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  std::stable_sort(tuples.begin(), tuples.end(), [](const auto& x, const auto& y) {
    int mx = *std::max_element(x.begin(), x.end());
    int my = *std::max_element(y.begin(), y.end());
    if (mx != my) return mx < my;
    return x < y;
  });
  for (const auto& tup : tuples) {
    RingElem xi = b[1];
    for (int s = 0; s < slots; ++s)
      xi = re_add(ring, xi, re_mul(ring, elems[tup[s]], b[2 + s]));
    if (re_is_zero(b[0]) && re_is_zero(xi)) continue;
    std::vector<RingElem> pair = {b[0], xi};
    bool unit = !re_is_zero(xi) || !re_is_zero(b[0]);
    if (unit && ideal_from_generators(ring, pair).is_unit_ideal()) {
      std::vector<RingElem> out;
      for (int s = 0; s < slots; ++s) out.push_back(elems[tup[s]]);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<GoodComplement> find_good_complement(const std::vector<OVector>& sigma,
                                                   const PBSpec& spec,
                                                   std::string* reason) {
  const RingDesc& ring = spec.ring;
  int n = spec.n;
  int k1 = static_cast<int>(sigma.size());  // k+1 in the usual indexing
  if (k1 >= n) throw std::invalid_argument("find_good_complement: simplex too large");

  // complete sigma to a basis (no congruence conditions)
  PBSpec unit_spec = spec;
  unit_spec.kind = PBSpec::IdealKind::Unit;
  MembershipVerdict m = certify_I_simplex(sigma, unit_spec);
  if (m.kind != MembershipVerdict::Kind::Yes) {
    if (reason) *reason = "could not complete sigma to a basis: " + m.reason;
    return std::nullopt;
  }
  std::vector<OVector> completion(m.certificate.begin() + k1, m.certificate.end());

  // I_sigma = ideal generated by the L-values of sigma
  std::vector<RingElem> lvals;
  bool all_zero = true;
  for (const auto& v : sigma) {
    lvals.push_back(l_value(v));
    if (!re_is_zero(l_value(v))) all_zero = false;
  }

  auto finish = [&](std::vector<OVector> wb) -> std::optional<GoodComplement> {
    GoodComplement gc;
    gc.w_basis = wb;
    gc.w = module_span(ring, n, wb);
    // verify the direct sum and the surjectivity of L on W
    ModuleLattice vs = module_span(ring, n, sigma);
    ModuleLattice total = module_sum(vs, gc.w);
    if (!(total == full_module(ring, n)) ||
        vs.zrank() + gc.w.zrank() != total.zrank()) {
      if (reason) *reason = "internal: complement verification failed";
      return std::nullopt;
    }
    std::vector<RingElem> wl;
    for (const auto& wv : wb) wl.push_back(l_value(wv));
    if (!ideal_from_generators(ring, wl).is_unit_ideal()) {
      if (reason) *reason = "internal: L(W) is not the unit ideal";
      return std::nullopt;
    }
    return gc;
  };

  if (all_zero) return finish(completion);  // I_sigma = (0): any complement works

  Ideal isigma = ideal_from_generators(ring, lvals);
  if (isigma.is_unit_ideal()) {
    // find v in V_sigma with L(v) = 1, then adjust the first completion vector
    Mat rows;
    std::vector<Row> gen_rows;  // embedded generators of V_sigma (v_i and w v_i)
    for (const auto& v : sigma) {
      Row r0 = embed_vector(ring, v);
      gen_rows.push_back(r0);
      if (ring.is_quadratic()) gen_rows.push_back(omega_row(ring, r0));
    }
    for (const auto& g : gen_rows) {
      OVector gv = unembed_row(ring, g);
      RingElem lv = l_value(gv);
      rows.push_back(coord_width(ring) == 1 ? Row{lv.a} : Row{lv.a, lv.b});
    }
    RingElem one = re_one();
    auto x = solve_left(rows, coord_width(ring) == 1 ? Row{one.a} : Row{one.a, one.b});
    if (!x) {
      if (reason) *reason = "internal: L(V_sigma) = O but no preimage of 1";
      return std::nullopt;
    }
    Row vrow(n * coord_width(ring), 0);
    for (size_t i = 0; i < gen_rows.size(); ++i)
      for (size_t j = 0; j < vrow.size(); ++j) vrow[j] += (*x)[i] * gen_rows[i][j];
    OVector v1 = unembed_row(ring, vrow);
    std::vector<OVector> wb = completion;
    RingElem coef = re_sub(ring, re_one(), l_value(wb[0]));
    for (int j = 0; j < n; ++j)
      wb[0].c[j] = re_add(ring, wb[0].c[j], re_mul(ring, coef, v1.c[j]));
    return finish(wb);
  }

  // (0) != I_sigma != O
  if (k1 == n - 1) {
    if (reason)
      *reason = "excluded case: (0) != I_sigma != O with |sigma| = n-1 has no good extension in general";
    return std::nullopt;
  }

  // reorder the completion so the last vector has L != 0
  std::vector<OVector> u = completion;
  int nz = -1;
  for (int i = 0; i < static_cast<int>(u.size()); ++i)
    if (!re_is_zero(l_value(u[i]))) nz = i;
  if (nz < 0) {
    if (reason) *reason = "internal: L vanishes on the whole complement";
    return std::nullopt;
  }
  std::swap(u[nz], u.back());

  // Reiner data: b1 = L(u_last), b2 = L(z) for z the first completion vector,
  // remaining values from sigma and the middle completion vectors
  OVector z = u[0];
  std::vector<RingElem> blist = {l_value(u.back()), l_value(z)};
  std::vector<OVector> carriers;
  for (const auto& v : sigma) {
    blist.push_back(l_value(v));
    carriers.push_back(v);
  }
  for (int i = 1; i + 1 < static_cast<int>(u.size()); ++i) {
    blist.push_back(l_value(u[i]));
    carriers.push_back(u[i]);
  }
  auto cs = reiner_complete(ring, blist, spec.search_height);
  if (!cs) {
    if (reason) *reason = "Reiner completion search exhausted";
    return std::nullopt;
  }
  OVector y = z;
  for (size_t s = 0; s < cs->size(); ++s)
    for (int j = 0; j < n; ++j)
      y.c[j] = re_add(ring, y.c[j], re_mul(ring, (*cs)[s], carriers[s].c[j]));
  std::vector<OVector> wb;
  wb.push_back(y);
  for (int i = 1; i < static_cast<int>(u.size()); ++i) wb.push_back(u[i]);
  return finish(wb);
}

}  // namespace steinlab
