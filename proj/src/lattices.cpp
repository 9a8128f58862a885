#include "steinlab/lattices.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace steinlab {

std::string ovector_to_string(const OVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.c.size(); ++i) {
    if (i) os << ",";
    os << elem_to_string(v.c[i]);
  }
  os << ")";
  return os.str();
}

OVector parse_ovector(const std::string& s, int n) {
  std::string t = s;
  if (!t.empty() && t.front() == '(') t = t.substr(1, t.size() - 2);
  OVector v;
  std::string cur;
  for (char ch : t) {
    if (ch == ',') {
      v.c.push_back(parse_elem(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) v.c.push_back(parse_elem(cur));
  if (static_cast<int>(v.c.size()) != n)
    throw std::invalid_argument("vector has wrong length: " + s);
  return v;
}

int coord_width(const RingDesc& r) { return r.is_quadratic() ? 2 : 1; }

Row embed_vector(const RingDesc& r, const OVector& v) {
  Row row;
  for (const auto& x : v.c) {
    row.push_back(x.a);
    if (r.is_quadratic()) row.push_back(x.b);
  }
  return row;
}

OVector unembed_row(const RingDesc& r, const Row& row) {
  OVector v;
  int w = coord_width(r);
  for (size_t i = 0; i < row.size(); i += w) {
    RingElem x;
    x.a = row[i];
    if (w == 2) x.b = row[i + 1];
    v.c.push_back(x);
  }
  return v;
}

Row omega_row(const RingDesc& r, const Row& row) {
  if (!r.is_quadratic())
    throw std::invalid_argument("omega action on a non-quadratic ring");
  Row out(row.size());
  for (size_t i = 0; i < row.size(); i += 2) {
    // w * (a + b w) = -b*norm + (a + b*trace) w
    out[i] = -row[i + 1] * r.omega_norm;
    out[i + 1] = row[i] + row[i + 1] * r.omega_trace;
  }
  return out;
}

int ModuleLattice::orank() const {
  return ring.is_quadratic() ? zrank() / 2 : zrank();
}

std::string ModuleLattice::key() const {
  std::ostringstream os;
  os << ring.to_string() << ";" << n << ";" << mat_to_string(basis);
  return os.str();
}

bool ModuleLattice::operator==(const ModuleLattice& o) const {
  return ring == o.ring && n == o.n && basis == o.basis;
}

ModuleLattice zero_module(const RingDesc& r, int n) {
  ModuleLattice m;
  m.ring = r;
  m.n = n;
  return m;
}

ModuleLattice full_module(const RingDesc& r, int n) {
  ModuleLattice m;
  m.ring = r;
  m.n = n;
  m.basis = mat_identity(n * coord_width(r));
  return m;
}

ModuleLattice module_from_rows(const RingDesc& r, int n, Mat rows, bool close_omega) {
  if (close_omega && r.is_quadratic()) {
    size_t k = rows.size();
    for (size_t i = 0; i < k; ++i) rows.push_back(omega_row(r, rows[i]));
  }
  ModuleLattice m;
  m.ring = r;
  m.n = n;
  m.basis = hnf(std::move(rows));
  return m;
}

ModuleLattice module_span(const RingDesc& r, int n, const std::vector<OVector>& vs) {
  Mat rows;
  for (const auto& v : vs) {
    if (static_cast<int>(v.c.size()) != n)
      throw std::invalid_argument("vector length mismatch");
    rows.push_back(embed_vector(r, v));
  }
  return module_from_rows(r, n, std::move(rows), true);
}

ModuleLattice module_saturate(const ModuleLattice& m) {
  ModuleLattice out;
  out.ring = m.ring;
  out.n = m.n;
  out.basis = saturation(m.basis, m.n * coord_width(m.ring));
  return out;
}

ModuleLattice span_and_saturate(const RingDesc& r, int n, const std::vector<OVector>& vs) {
  return module_saturate(module_span(r, n, vs));
}

ModuleLattice module_sum(const ModuleLattice& a, const ModuleLattice& b) {
  if (!(a.ring == b.ring) || a.n != b.n)
    throw std::invalid_argument("module ambient mismatch");
  Mat rows = a.basis;
  for (const auto& row : b.basis) rows.push_back(row);
  return module_from_rows(a.ring, a.n, std::move(rows), false);
}

ModuleLattice lattice_intersection(const ModuleLattice& a, const ModuleLattice& b) {
  if (!(a.ring == b.ring) || a.n != b.n)
    throw std::invalid_argument("module ambient mismatch");
  if (a.is_zero() || b.is_zero()) return zero_module(a.ring, a.n);
  Mat stacked = a.basis;
  for (const auto& row : b.basis) stacked.push_back(row);
  Mat ker = left_kernel(stacked);
  Mat rows;
  for (const auto& k : ker) {
    Row v(a.basis[0].size(), 0);
    for (size_t i = 0; i < a.basis.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) v[j] += k[i] * a.basis[i][j];
    rows.push_back(v);
  }
  return module_from_rows(a.ring, a.n, std::move(rows), false);
}

bool module_contains_row(const ModuleLattice& m, const Row& row) {
  return hnf_contains(m.basis, row);
}

bool module_subset(const ModuleLattice& a, const ModuleLattice& b) {
  for (const auto& row : a.basis)
    if (!hnf_contains(b.basis, row)) return false;
  return true;
}

bool is_summand(const ModuleLattice& u, const ModuleLattice& ambient) {
  if (!module_subset(u, ambient))
    throw std::invalid_argument("is_summand: u is not contained in ambient");
  if (u.is_zero()) return true;
  // coordinates of u's basis w.r.t. ambient's basis
  Mat coords;
  for (const auto& row : u.basis) {
    auto x = solve_left(ambient.basis, row);
    if (!x) throw std::logic_error("containment violated in is_summand");
    coords.push_back(*x);
  }
  for (const auto& f : snf_invariant_factors(coords))
    if (f != 1) return false;
  return true;
}

std::vector<OVector> module_generators(const ModuleLattice& m) {
  std::vector<OVector> out;
  for (const auto& row : m.basis) out.push_back(unembed_row(m.ring, row));
  return out;
}

RingElem re_det(const RingDesc& r, const std::vector<std::vector<RingElem>>& m) {
  size_t k = m.size();
  if (k == 1) return m[0][0];
  RingElem acc = re_zero();
  for (size_t j = 0; j < k; ++j) {
    std::vector<std::vector<RingElem>> sub;
    for (size_t i = 1; i < k; ++i) {
      std::vector<RingElem> row;
      for (size_t jj = 0; jj < k; ++jj)
        if (jj != j) row.push_back(m[i][jj]);
      sub.push_back(row);
    }
    RingElem term = re_mul(r, m[0][j], re_det(r, sub));
    acc = (j % 2 == 0) ? re_add(r, acc, term) : re_sub(r, acc, term);
  }
  return acc;
}

namespace {

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) { fn(idx); return; }
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

IdealClass steinitz_class(const ModuleLattice& u, const ClassGroup& cg) {
  if (u.is_zero()) throw std::invalid_argument("steinitz_class of the zero lattice");
  if (u.ring.kind == RingKind::Integers) return {0};
  int r = u.orank();
  std::vector<OVector> gens = module_generators(u);
  int rows = static_cast<int>(gens.size());
  int cols = u.n;
  // One fixed column subset (a Pluecker slot where the minor map does not
  // vanish) embeds wedge^r U into K; the row minors there generate an ideal
  // isomorphic to wedge^r U, whose class is the Steinitz class.  Varying the
  // columns too would compute the content ideal instead.
  std::vector<RingElem> minors;
  combinations(cols, r, [&](const std::vector<int>& ci) {
    if (!minors.empty()) return;
    std::vector<RingElem> slot;
    combinations(rows, r, [&](const std::vector<int>& ri) {
      std::vector<std::vector<RingElem>> sub(r, std::vector<RingElem>(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) sub[i][j] = gens[ri[i]].c[ci[j]];
      RingElem d = re_det(u.ring, sub);
      if (!re_is_zero(d)) slot.push_back(d);
    });
    if (!slot.empty()) minors = std::move(slot);
  });
  if (minors.empty()) throw std::logic_error("rank-deficient minors in steinitz_class");
  return ideal_class(ideal_from_generators(u.ring, minors), cg);
}

Ideal coordinate_ideal(const RingDesc& r, const OVector& v) {
  return ideal_from_generators(r, v.c);
}

bool is_unimodular(const RingDesc& r, const OVector& v) {
  bool all_zero = true;
  for (const auto& x : v.c)
    if (!re_is_zero(x)) all_zero = false;
  if (all_zero) throw std::invalid_argument("is_unimodular: zero vector");
  return coordinate_ideal(r, v).is_unit_ideal();
}

Int vector_height(const RingDesc& r, const OVector& v) {
  Int h = 0;
  for (const auto& x : v.c) {
    Int e = elem_height(r, x);
    if (r.is_quadratic()) h += e;
    else h = std::max(h, e);
  }
  return h;
}

std::vector<Row> coeff_shell(int rank, long h) {
  std::vector<Row> out;
  Row cur(rank, 0);
  // lexicographic over the box [-h, h]^rank, keeping sup norm == h
  std::function<void(int, bool)> rec = [&](int pos, bool hit) {
    if (pos == rank) {
      if (hit) out.push_back(cur);
      return;
    }
    for (long v = -h; v <= h; ++v) {
      cur[pos] = v;
      rec(pos + 1, hit || v == h || v == -h);
    }
  };
  rec(0, false);
  return out;
}

long default_height_budget(const RingDesc& r) {
  long disc = static_cast<long>(abs(r.disc));
  if (disc < 1) disc = 1;
  return 10 * disc;  // heuristic; no effective bound is known
}

namespace {

ModuleLattice adjoin_and_saturate(const ModuleLattice& base, const RingDesc& ring, const Row& w) {
  Mat rows = base.basis;
  rows.push_back(w);
  if (ring.is_quadratic()) rows.push_back(omega_row(ring, w));
  ModuleLattice m;
  m.ring = ring;
  m.n = base.n;
  m.basis = saturation(rows, base.n * coord_width(ring));
  return m;
}

}  // namespace

SummandSearchResult find_intermediate_summand(const ModuleLattice& lower,
                                              const ModuleLattice& upper,
                                              int r, IdealClass c,
                                              const ClassGroup& cg,
                                              const SearchBudget& budget,
                                              std::uint64_t seed) {
  if (!(lower.ring == upper.ring) || lower.n != upper.n)
    throw std::invalid_argument("find_intermediate_summand: ambient mismatch");
  if (!module_subset(lower, upper))
    throw std::invalid_argument("find_intermediate_summand: lower not inside upper");
  if (!(lower.orank() < r && r < upper.orank()))
    throw std::invalid_argument("find_intermediate_summand: rank out of range");
  ModuleLattice full = full_module(lower.ring, lower.n);
  if (!is_summand(lower, full) || !is_summand(upper, full))
    throw std::invalid_argument("find_intermediate_summand: endpoints must be summands");

  long max_h = budget.max_coeff_height > 0 ? budget.max_coeff_height
                                           : default_height_budget(lower.ring);
  SummandSearchResult res;
  ModuleLattice cur = lower;
  while (cur.orank() < r) {
    bool last_step = (cur.orank() + 1 == r);
    std::optional<ModuleLattice> step;
    for (long h = 1; h <= max_h && !step; ++h) {
      std::vector<Row> shell = coeff_shell(upper.zrank(), h);
      size_t off = shell.empty() ? 0 : static_cast<size_t>(seed % shell.size());
      for (size_t t = 0; t < shell.size(); ++t) {
        const Row& coef = shell[(t + off) % shell.size()];
        ++res.candidates_tried;
        if (res.candidates_tried > budget.max_candidates) break;
        Row w(upper.basis[0].size(), 0);
        for (size_t i = 0; i < coef.size(); ++i)
          for (size_t j = 0; j < w.size(); ++j) w[j] += coef[i] * upper.basis[i][j];
        ModuleLattice cand = adjoin_and_saturate(cur, lower.ring, w);
        if (cand.orank() != cur.orank() + 1) continue;
        if (cand == upper) continue;
        if (last_step && !(steinitz_class(cand, cg) == c)) continue;
        step = cand;
        break;
      }
      if (res.candidates_tried > budget.max_candidates) break;
    }
    if (!step) {
      res.outcome = "not found within budget";
      return res;
    }
    cur = *step;
  }
  res.found = cur;
  res.outcome = "found";
  return res;
}

std::vector<ModuleLattice> rank1_summands(const ModuleLattice& m, long bound) {
  std::vector<ModuleLattice> out;
  std::map<std::string, bool> seen;
  for (long h = 1; h <= bound; ++h) {
    for (const Row& coef : coeff_shell(m.zrank(), h)) {
      Row w(m.basis[0].size(), 0);
      for (size_t i = 0; i < coef.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) w[j] += coef[i] * m.basis[i][j];
      ModuleLattice cand = adjoin_and_saturate(zero_module(m.ring, m.n), m.ring, w);
      if (cand.orank() != 1) continue;
      if (seen.count(cand.key())) continue;
      seen[cand.key()] = true;
      out.push_back(cand);
    }
  }
  return out;
}

}  // namespace steinlab
