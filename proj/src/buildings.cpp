#include "steinlab/buildings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace steinlab {

int BuildingPoset::index_of(const std::string& key) const {
  for (size_t i = 0; i < keys.size(); ++i)
    if (keys[i] == key) return static_cast<int>(i);
  return -1;
}

SimplicialComplex BuildingPoset::complex() const {
  return order_complex(poset, keys);
}

int point_code(const FVec& v, long q) {
  int code = 0;
  for (size_t i = 0; i < v.size(); ++i)
    code = code * static_cast<int>(q) + (v[i] % q + q) % q;
  return code;
}

namespace {

FVec decode_point(int code, long q, int n) {
  FVec v(n);
  for (int i = n - 1; i >= 0; --i) {
    v[i] = code % static_cast<int>(q);
    code /= static_cast<int>(q);
  }
  return v;
}

}  // namespace

std::vector<int> span_points(const std::vector<FVec>& gens, long q, int n) {
  std::set<int> pts;
  pts.insert(0);
  for (const auto& g : gens) {
    std::set<int> next = pts;
    for (int c : pts) {
      FVec base = decode_point(c, q, n);
      FVec cur = base;
      for (long t = 1; t < q; ++t) {
        for (int i = 0; i < n; ++i) cur[i] = (base[i] + static_cast<int>(t) * g[i]) % static_cast<int>(q);
        next.insert(point_code(cur, q));
      }
    }
    pts.swap(next);
  }
  pts.erase(0);
  return {pts.begin(), pts.end()};
}

std::string subspace_key(const std::vector<int>& pts) {
  std::ostringstream os;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ",";
    os << pts[i];
  }
  return os.str();
}

namespace {

struct ElementDraft {
  std::string key;
  int height;
  std::vector<int> pts;          // field mode
  ModuleLattice lat;             // module mode
  std::pair<int, int> xnode{0, 0};
};

BuildingPoset assemble(BuildingPoset b, std::vector<ElementDraft> elems,
                       const std::function<bool(const ElementDraft&, const ElementDraft&)>& less) {
  std::sort(elems.begin(), elems.end(), [](const ElementDraft& a, const ElementDraft& c) {
    if (a.height != c.height) return a.height < c.height;
    return a.key < c.key;
  });
  for (const auto& e : elems) {
    b.keys.push_back(e.key);
    b.heights.push_back(e.height);
    if (b.mode == BuildingPoset::Mode::Field) b.subspaces.push_back(e.pts);
    if (b.mode == BuildingPoset::Mode::Module) b.lattices.push_back(e.lat);
    if (b.mode == BuildingPoset::Mode::X) b.xnodes.push_back(e.xnode);
  }
  b.poset = poset_from_less(static_cast<int>(elems.size()), [&](int i, int j) {
    return less(elems[i], elems[j]);
  });
  return b;
}

}  // namespace

BuildingPoset tits_building_field(long q, int n) {
  bool prime = q >= 2;
  for (long f = 2; f * f <= q; ++f)
    if (q % f == 0) prime = false;
  if (!prime || q > 9)
    throw std::invalid_argument("tits_building_field: q must be a prime <= 9");
  if (n < 2 || n > 4) throw std::invalid_argument("tits_building_field: n must be 2..4");

  // enumerate subspaces dimension by dimension as point sets
  std::vector<std::vector<std::vector<int>>> by_dim(n);  // by_dim[d] = subspaces of dim d
  std::set<std::vector<int>> lines;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (int code = 1; code < total; ++code) {
    FVec v = decode_point(code, q, n);
    lines.insert(span_points({v}, q, n));
  }
  by_dim[1] = {lines.begin(), lines.end()};
  for (int d = 2; d < n; ++d) {
    std::set<std::vector<int>> level;
    for (const auto& s : by_dim[d - 1]) {
      for (int code = 1; code < total; ++code) {
        if (std::binary_search(s.begin(), s.end(), code)) continue;
        std::vector<FVec> gens;
        for (int c : s) gens.push_back(decode_point(c, q, n));
        gens.push_back(decode_point(code, q, n));
        level.insert(span_points(gens, q, n));
      }
    }
    by_dim[d] = {level.begin(), level.end()};
  }

  BuildingPoset b;
  b.mode = BuildingPoset::Mode::Field;
  b.q = q;
  b.n = n;
  std::vector<ElementDraft> elems;
  for (int d = 1; d < n; ++d)
    for (const auto& s : by_dim[d]) {
      ElementDraft e;
      e.pts = s;
      e.key = subspace_key(s);
      e.height = d - 1;
      elems.push_back(e);
    }
  return assemble(std::move(b), std::move(elems), [](const ElementDraft& a, const ElementDraft& c) {
    if (a.pts.size() >= c.pts.size()) return false;
    return std::includes(c.pts.begin(), c.pts.end(), a.pts.begin(), a.pts.end());
  });
}

Chain apartment_class_field(const FieldFrame& f, const BuildingPoset& b) {
  if (b.mode != BuildingPoset::Mode::Field)
    throw std::invalid_argument("apartment_class_field: wrong building mode");
  int n = b.n;
  if (static_cast<int>(f.lines.size()) != n)
    throw std::invalid_argument("frame must have n lines");
  long qn = 1;
  for (int i = 0; i < n; ++i) qn *= b.q;
  if (static_cast<long>(span_points(f.lines, b.q, n).size()) + 1 != qn)
    throw std::invalid_argument("frame is not full rank");

  // precompute ids of the prefix spans for every subset
  std::map<std::vector<int>, int> subset_to_id;
  Chain chain;
  chain.degree = n - 2;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int sign = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Simplex flag;
    std::vector<FVec> gens;
    for (int i = 0; i < n - 1; ++i) {
      gens.push_back(f.lines[perm[i]]);
      std::vector<int> sorted_sub(perm.begin(), perm.begin() + i + 1);
      std::sort(sorted_sub.begin(), sorted_sub.end());
      auto it = subset_to_id.find(sorted_sub);
      int id;
      if (it == subset_to_id.end()) {
        std::vector<int> pts = span_points(gens, b.q, n);
        id = b.index_of(subspace_key(pts));
        if (id < 0) throw std::logic_error("apartment span missing from building");
        subset_to_id[sorted_sub] = id;
      } else {
        id = it->second;
      }
      flag.push_back(id);
    }
    chain.add_oriented(std::move(flag), sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return chain;
}

BuildingPoset tits_building_module(const ModuleLattice& m, long height_bound) {
  int n = m.orank();
  if (n < 2 || n > 3)
    throw std::invalid_argument("tits_building_module: ambient orank must be 2 or 3");
  BuildingPoset b;
  b.mode = BuildingPoset::Mode::Module;
  b.truncated = true;
  b.trunc_bound = height_bound;
  b.n = n;

  std::vector<ElementDraft> elems;
  std::set<std::string> seen;
  std::vector<ModuleLattice> r1 = rank1_summands(m, height_bound);
  for (const auto& u : r1) {
    ElementDraft e;
    e.lat = u;
    e.key = u.key();
    e.height = 0;
    if (seen.insert(e.key).second) elems.push_back(e);
  }
  if (n == 3) {
    for (size_t i = 0; i < r1.size(); ++i)
      for (size_t j = i + 1; j < r1.size(); ++j) {
        ModuleLattice s = module_saturate(module_sum(r1[i], r1[j]));
        if (s.orank() != 2) continue;
        ElementDraft e;
        e.lat = s;
        e.key = s.key();
        e.height = 1;
        if (seen.insert(e.key).second) elems.push_back(e);
      }
  }
  return assemble(std::move(b), std::move(elems), [](const ElementDraft& a, const ElementDraft& c) {
    if (a.lat.orank() >= c.lat.orank()) return false;
    return module_subset(a.lat, c.lat);
  });
}

namespace {

std::vector<ModuleLattice> frame_prefix_summands(const ModuleFrame& f, const ModuleLattice& m,
                                                 std::vector<std::vector<int>>* subsets) {
  int n = m.orank();
  if (static_cast<int>(f.constituents.size()) != n)
    throw std::invalid_argument("frame must have n constituents");
  // U_X for all nonempty proper subsets X of [n]
  std::vector<ModuleLattice> us;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    ModuleLattice acc = zero_module(m.ring, m.n);
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        acc = module_sum(acc, f.constituents[i]);
        sub.push_back(i);
      }
    us.push_back(module_saturate(acc));
    if (subsets) subsets->push_back(sub);
  }
  return us;
}

}  // namespace

ApartmentChainResult apartment_class_module(const ModuleFrame& f, const ModuleLattice& m) {
  int n = m.orank();
  std::vector<std::vector<int>> subsets;
  std::vector<ModuleLattice> us = frame_prefix_summands(f, m, &subsets);
  // full-rank check
  ModuleLattice total = zero_module(m.ring, m.n);
  for (const auto& c : f.constituents) total = module_sum(total, c);
  if (total.orank() != n) throw std::invalid_argument("frame is not full rank");

  ApartmentChainResult res;
  std::map<std::vector<int>, int> subset_pos;
  for (size_t i = 0; i < subsets.size(); ++i) subset_pos[subsets[i]] = static_cast<int>(i);
  // ids sorted by (orank, key)
  std::vector<std::pair<std::pair<int, std::string>, int>> order;
  for (size_t i = 0; i < us.size(); ++i)
    order.push_back({{us[i].orank(), us[i].key()}, static_cast<int>(i)});
  std::sort(order.begin(), order.end());
  std::map<std::string, int> key_to_id;
  for (const auto& [gk, pos] : order) {
    if (key_to_id.count(gk.second)) continue;
    int id = static_cast<int>(res.elems.size());
    key_to_id[gk.second] = id;
    res.elems.push_back(us[pos]);
    res.indexer.ids[{gk.first - 1, gk.second}] = id;
    res.indexer.names.push_back(gk.second);
  }

  res.chain.degree = n - 2;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int sign = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Simplex flag;
    std::vector<int> sub;
    for (int i = 0; i < n - 1; ++i) {
      sub.push_back(perm[i]);
      std::vector<int> sorted_sub = sub;
      std::sort(sorted_sub.begin(), sorted_sub.end());
      const ModuleLattice& u = us[subset_pos[sorted_sub]];
      flag.push_back(key_to_id[u.key()]);
    }
    res.chain.add_oriented(std::move(flag), sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return res;
}

Chain apartment_class_module_in(const ModuleFrame& f, const ModuleLattice& m,
                                const BuildingPoset& b) {
  ApartmentChainResult r = apartment_class_module(f, m);
  std::vector<int> remap(r.elems.size());
  for (size_t i = 0; i < r.elems.size(); ++i) {
    int id = b.index_of(r.elems[i].key());
    if (id < 0)
      throw std::invalid_argument("apartment summand missing from (truncated) building");
    remap[i] = id;
  }
  return push_chain(r.chain, [&](int v) { return remap[v]; });
}

bool is_integral_frame(const ModuleFrame& f, const ModuleLattice& m) {
  ModuleLattice total = zero_module(m.ring, m.n);
  for (const auto& c : f.constituents) total = module_sum(total, c);
  if (total.orank() != m.orank())
    throw std::invalid_argument("is_integral_frame: rank deficiency");
  return total == m;
}

BuildingPoset x_building(int m, const std::vector<std::string>& t) {
  if (m < 1 || t.empty()) throw std::invalid_argument("x_building: need m >= 1, |T| >= 1");
  BuildingPoset b;
  b.mode = BuildingPoset::Mode::X;
  b.m = m;
  b.tlabels = t;
  std::vector<ElementDraft> elems;
  for (int p = 1; p <= m; ++p)
    for (size_t ti = 0; ti < t.size(); ++ti) {
      ElementDraft e;
      e.xnode = {p, static_cast<int>(ti)};
      e.key = "(" + std::to_string(p) + "," + t[ti] + ")";
      e.height = p - 1;
      elems.push_back(e);
    }
  return assemble(std::move(b), std::move(elems), [](const ElementDraft& a, const ElementDraft& c) {
    return a.xnode.first < c.xnode.first;
  });
}

Chain x_apartment_class(const XApartmentSpec& s, const BuildingPoset& xb) {
  if (xb.mode != BuildingPoset::Mode::X)
    throw std::invalid_argument("x_apartment_class: wrong building mode");
  int m = xb.m;
  if (static_cast<int>(s.pairs.size()) != m)
    throw std::invalid_argument("apartment spec must have m pairs");
  for (const auto& [a, b2] : s.pairs)
    if (a == b2) throw std::invalid_argument("degenerate pair in apartment spec");
  Chain chain;
  chain.degree = m - 1;
  for (int eps = 0; eps < (1 << m); ++eps) {
    Simplex ch;
    int sign = 1;
    for (int k = 0; k < m; ++k) {
      bool bit = (eps >> k) & 1;
      if (bit) sign = -sign;
      const std::string& lab = bit ? s.pairs[k].first : s.pairs[k].second;
      int id = xb.index_of("(" + std::to_string(k + 1) + "," + lab + ")");
      if (id < 0) throw std::invalid_argument("label absent from X building: " + lab);
      ch.push_back(id);
    }
    chain.add_oriented(std::move(ch), sign);
  }
  return chain;
}

}  // namespace steinlab
