#include "steinlab/topo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace steinlab {

int SimplicialComplex::add_vertex(const std::string& label) {
  auto it = vertex_ids.find(label);
  if (it != vertex_ids.end()) return it->second;
  int id = static_cast<int>(labels.size());
  labels.push_back(label);
  vertex_ids[label] = id;
  return id;
}

int SimplicialComplex::vertex(const std::string& label) const {
  auto it = vertex_ids.find(label);
  return it == vertex_ids.end() ? -1 : it->second;
}

void SimplicialComplex::add_simplex(Simplex s) {
  std::sort(s.begin(), s.end());
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) throw std::invalid_argument("degenerate simplex");
  int d = static_cast<int>(s.size()) - 1;
  if (d < 0) return;
  if (static_cast<int>(by_dim.size()) <= d) by_dim.resize(d + 1);
  if (by_dim[d].count(s)) return;
  by_dim[d].insert(s);
  if (d > 0) {
    for (size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      for (size_t j = 0; j < s.size(); ++j)
        if (j != i) face.push_back(s[j]);
      add_simplex(std::move(face));
    }
  }
}

bool SimplicialComplex::has_simplex(const Simplex& s) const {
  int d = static_cast<int>(s.size()) - 1;
  if (d < 0 || d >= static_cast<int>(by_dim.size())) return false;
  return by_dim[d].count(s) > 0;
}

int SimplicialComplex::dim() const {
  for (int d = static_cast<int>(by_dim.size()) - 1; d >= 0; --d)
    if (!by_dim[d].empty()) return d;
  return -1;
}

long long SimplicialComplex::simplex_count(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim.size())) return 0;
  return static_cast<long long>(by_dim[d].size());
}

std::vector<Simplex> SimplicialComplex::simplices(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim.size())) return {};
  return {by_dim[d].begin(), by_dim[d].end()};
}

bool SimplicialComplex::empty() const { return dim() < 0; }

void Chain::add(const Simplex& key, long long c) {
  if (c == 0) return;
  if (degree >= 0 && static_cast<int>(key.size()) != degree + 1)
    throw std::logic_error("chain key has the wrong dimension");
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    coeffs[key] = c;
  } else {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

void Chain::add_oriented(Simplex key, long long c) {
  // insertion sort, tracking the permutation sign
  int sign = 1;
  for (size_t i = 1; i < key.size(); ++i)
    for (size_t j = i; j > 0 && key[j] < key[j - 1]; --j) {
      std::swap(key[j], key[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < key.size(); ++i)
    if (key[i] == key[i - 1]) return;  // degenerate
  add(key, c * sign);
}

Chain chain_sub(const Chain& a, const Chain& b) {
  Chain r = a;
  r.degree = a.degree >= 0 ? a.degree : b.degree;
  for (const auto& [k, c] : b.coeffs) r.add(k, -c);
  return r;
}

Chain chain_neg(const Chain& a) {
  Chain r;
  r.degree = a.degree;
  for (const auto& [k, c] : a.coeffs) r.coeffs[k] = -c;
  return r;
}

namespace {

Chain boundary_impl(const Chain& c, const SimplicialComplex* x) {
  Chain out;
  out.degree = c.degree - 1;
  for (const auto& [key, coef] : c.coeffs) {
    if (x && !x->has_simplex(key))
      throw std::invalid_argument("boundary: simplex key absent from complex");
    for (size_t i = 0; i < key.size(); ++i) {
      Simplex face;
      for (size_t j = 0; j < key.size(); ++j)
        if (j != i) face.push_back(key[j]);
      long long sign = (i % 2 == 0) ? 1 : -1;
      out.add(face, coef * sign);
    }
  }
  return out;
}

}  // namespace

Chain boundary(const SimplicialComplex& x, const Chain& c) { return boundary_impl(c, &x); }
Chain boundary_formal(const Chain& c) { return boundary_impl(c, nullptr); }

Chain push_chain(const Chain& c, const std::function<int(int)>& vertex_map) {
  Chain out;
  out.degree = c.degree;
  for (const auto& [key, coef] : c.coeffs) {
    Simplex image;
    for (int v : key) image.push_back(vertex_map(v));
    out.add_oriented(std::move(image), coef);
  }
  return out;
}

Chain push_chain_poset(const Chain& c, const std::function<int(int)>& vertex_map,
                       const std::function<bool(int, int)>& less) {
  for (const auto& [key, coef] : c.coeffs)
    for (size_t i = 0; i + 1 < key.size(); ++i)
      if (!less(vertex_map(key[i]), vertex_map(key[i + 1])))
        throw std::invalid_argument("push_chain_poset: map is not order-preserving on the support");
  return push_chain(c, vertex_map);
}

int KeyIndexer::id(int grade, const std::string& name) {
  auto it = ids.find({grade, name});
  if (it != ids.end()) return it->second;
  throw std::logic_error("KeyIndexer::id on unregistered key (use build pass)");
}

int KeyIndexer::lookup(int grade, const std::string& name) const {
  auto it = ids.find({grade, name});
  return it == ids.end() ? -1 : it->second;
}

namespace {

std::string simplex_name(const Simplex& s) {
  std::ostringstream os;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << " ";
    os << s[i];
  }
  return os.str();
}

}  // namespace

Chain barycentric_chain(const SimplicialComplex& x, const Chain& c, KeyIndexer& idx) {
  // register every face of the support so ids respect (dimension, key) order
  std::set<std::pair<int, std::string>> needed;
  for (const auto& [key, coef] : c.coeffs) {
    if (!x.has_simplex(key))
      throw std::invalid_argument("barycentric_chain: key absent from complex");
    // all nonempty subsets
    size_t k = key.size();
    for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
      Simplex sub;
      for (size_t i = 0; i < k; ++i)
        if (mask & (size_t(1) << i)) sub.push_back(key[i]);
      needed.insert({static_cast<int>(sub.size()) - 1, simplex_name(sub)});
    }
  }
  for (const auto& p : needed)
    if (idx.ids.find(p) == idx.ids.end()) {
      int id = static_cast<int>(idx.names.size());
      idx.ids[p] = id;
      idx.names.push_back(p.second);
    }

  Chain out;
  out.degree = c.degree;
  for (const auto& [key, coef] : c.coeffs) {
    size_t k = key.size();
    std::vector<int> perm(k);
    for (size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    do {
      int sign = 1;
      for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      Simplex flag;
      Simplex prefix;
      for (size_t i = 0; i < k; ++i) {
        prefix.push_back(key[perm[i]]);
        Simplex sorted_prefix = prefix;
        std::sort(sorted_prefix.begin(), sorted_prefix.end());
        flag.push_back(idx.id(static_cast<int>(i), simplex_name(sorted_prefix)));
      }
      out.add_oriented(std::move(flag), coef * sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

Poset poset_from_less(int size, const std::function<bool(int, int)>& less) {
  Poset p;
  p.size = size;
  p.lt.assign(size, std::vector<char>(size, 0));
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if (a != b && less(a, b)) p.lt[a][b] = 1;
  // transitive closure; also sanity-check acyclicity
  for (int k = 0; k < size; ++k)
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        if (p.lt[a][k] && p.lt[k][b]) p.lt[a][b] = 1;
  for (int a = 0; a < size; ++a)
    if (p.lt[a][a]) throw std::invalid_argument("poset order has a cycle");
  p.heights.assign(size, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b)
        if (p.lt[a][b] && p.heights[b] < p.heights[a] + 1) {
          p.heights[b] = p.heights[a] + 1;
          changed = true;
        }
  }
  return p;
}

SimplicialComplex order_complex(const Poset& p, const std::vector<std::string>& labels) {
  SimplicialComplex x;
  for (int i = 0; i < p.size; ++i)
    x.add_vertex(labels.empty() ? "e" + std::to_string(i) : labels[i]);
  // enumerate maximal chains by DFS; every chain is a face of a maximal one
  std::vector<int> chain;
  std::function<void(int)> dfs = [&](int last) {
    bool extended = false;
    for (int nxt = 0; nxt < p.size; ++nxt) {
      if (last >= 0 && !p.less(last, nxt)) continue;
      if (last < 0) {
        // start only from minimal elements
        bool minimal = true;
        for (int a = 0; a < p.size; ++a)
          if (p.less(a, nxt)) { minimal = false; break; }
        if (!minimal) continue;
      }
      chain.push_back(nxt);
      dfs(nxt);
      chain.pop_back();
      extended = true;
    }
    if (!extended && !chain.empty()) x.add_simplex(chain);
  };
  dfs(-1);
  return x;
}

Poset simplex_poset(const SimplicialComplex& x, std::vector<std::string>* labels) {
  std::vector<Simplex> elems;
  for (int d = 0; d <= x.dim(); ++d)
    for (const auto& s : x.simplices(d)) elems.push_back(s);
  if (labels) {
    labels->clear();
    for (const auto& s : elems) {
      std::vector<std::string> names;
      for (int v : s) names.push_back(x.labels[v]);
      std::sort(names.begin(), names.end());
      std::string lab;
      for (size_t i = 0; i < names.size(); ++i) lab += (i ? " " : "") + names[i];
      labels->push_back(lab);
    }
  }
  return poset_from_less(static_cast<int>(elems.size()), [&](int a, int b) {
    return elems[a].size() < elems[b].size() &&
           std::includes(elems[b].begin(), elems[b].end(), elems[a].begin(), elems[a].end());
  });
}

Mat boundary_matrix(const SimplicialComplex& x, int d) {
  std::vector<Simplex> rows = x.simplices(d - 1);
  std::vector<Simplex> cols = x.simplices(d);
  std::map<Simplex, int> row_of;
  for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  Mat m(rows.size(), Row(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = cols[j];
    for (size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      for (size_t t = 0; t < s.size(); ++t)
        if (t != i) face.push_back(s[t]);
      m[row_of[face]][j] = (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

HomologySummary reduced_homology(const SimplicialComplex& x) {
  HomologySummary hs;
  int dim = x.dim();
  if (dim < 0) return hs;
  hs.betti.assign(dim + 1, 0);
  hs.torsion.assign(dim + 1, {});
  std::vector<int> rank(dim + 2, 0);
  std::vector<std::vector<Int>> factors(dim + 2);
  // degree 0 boundary is the augmentation into the empty simplex
  rank[0] = x.simplex_count(0) > 0 ? 1 : 0;
  for (int d = 1; d <= dim; ++d) {
    Mat bd = boundary_matrix(x, d);
    factors[d] = snf_invariant_factors(bd);
    rank[d] = static_cast<int>(factors[d].size());
  }
  for (int d = 0; d <= dim; ++d) {
    hs.betti[d] = x.simplex_count(d) - rank[d] - rank[d + 1];
    if (d + 1 <= dim)
      for (const auto& f : factors[d + 1])
        if (f > 1) hs.torsion[d].push_back(f);
  }
  // Euler characteristic cross-check on every run
  long long chi_simplices = 0, chi_betti = 0;
  for (int d = 0; d <= dim; ++d) {
    long long sgn = (d % 2 == 0) ? 1 : -1;
    chi_simplices += sgn * x.simplex_count(d);
    chi_betti += sgn * hs.betti[d];
  }
  if (chi_simplices - 1 != chi_betti)
    throw std::logic_error("Euler characteristic mismatch in reduced_homology");
  return hs;
}

SimplicialComplex link_complex(const SimplicialComplex& x, const Simplex& s) {
  SimplicialComplex lk;
  lk.labels = x.labels;
  lk.vertex_ids = x.vertex_ids;
  int dim = x.dim();
  Simplex key = s;
  std::sort(key.begin(), key.end());
  for (int d = 0; d <= dim; ++d) {
    for (const auto& t : x.simplices(d)) {
      // t disjoint from key and t ∪ key a simplex
      Simplex u;
      bool disjoint = true;
      for (int v : t)
        if (std::binary_search(key.begin(), key.end(), v)) { disjoint = false; break; }
      if (!disjoint) continue;
      u = t;
      u.insert(u.end(), key.begin(), key.end());
      std::sort(u.begin(), u.end());
      if (x.has_simplex(u)) lk.add_simplex(t);
    }
  }
  return lk;
}

SimplicialComplex cone(const SimplicialComplex& x, const std::string& apex_label) {
  SimplicialComplex c = x;
  int apex = c.add_vertex(apex_label);
  int dim = x.dim();
  c.add_simplex({apex});
  for (int d = 0; d <= dim; ++d)
    for (const auto& s : x.simplices(d)) {
      Simplex t = s;
      t.push_back(apex);
      c.add_simplex(std::move(t));
    }
  return c;
}

bool is_hlevel_cm(const SimplicialComplex& x, int d) {
  if (x.dim() != d) return false;
  HomologySummary hs = reduced_homology(x);
  for (int i = 0; i < d; ++i)
    if (hs.betti_at(i) != 0 || !hs.torsion[i].empty()) return false;
  for (int k = 0; k <= d; ++k) {
    for (const auto& s : x.simplices(k)) {
      SimplicialComplex lk = link_complex(x, s);
      int ld = d - k - 1;
      if (ld < 0) continue;
      if (lk.dim() != ld) return false;
      HomologySummary lh = reduced_homology(lk);
      for (int i = 0; i < ld; ++i)
        if (lh.betti_at(i) != 0 || !lh.torsion[i].empty()) return false;
    }
  }
  return true;
}

namespace {

bool image_simplex_of(const SimplicialComplex& y, const std::vector<int>& u,
                      const std::function<int(int)>& f, Simplex* out) {
  Simplex img;
  for (int v : u) img.push_back(f(v));
  std::sort(img.begin(), img.end());
  for (size_t i = 1; i < img.size(); ++i)
    if (img[i] == img[i - 1]) return false;
  if (!y.has_simplex(img)) return false;
  *out = img;
  return true;
}

bool is_maximal(const SimplicialComplex& y, const Simplex& s) {
  int d = static_cast<int>(s.size());  // s has dimension d-1
  for (const auto& t : y.simplices(d)) {
    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) return false;
  }
  return true;
}

}  // namespace

bool check_fibered(const SimplicialComplex& x, const SimplicialComplex& y,
                   const std::function<int(int)>& f, const std::set<int>& core) {
  // f must be simplicial and F(core) must cover the vertices of y
  int dy = y.dim();
  if (x.dim() > dy) return false;
  std::set<int> covered;
  for (int v : core) covered.insert(f(v));
  for (const auto& s : y.simplices(0))
    if (!covered.count(s[0])) return false;
  for (int d = 0; d <= x.dim(); ++d)
    for (const auto& s : x.simplices(d)) {
      Simplex img;
      if (!image_simplex_of(y, s, f, &img)) return false;  // f not simplicial
    }
  // exhaustive check over vertex subsets up to size dim(y)+1
  int nv = static_cast<int>(x.labels.size());
  std::vector<int> verts(nv);
  for (int i = 0; i < nv; ++i) verts[i] = i;
  std::vector<int> cur;
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (!cur.empty()) {
      Simplex u = cur;
      Simplex img;
      bool cond1 = image_simplex_of(y, u, f, &img);
      bool cond2 = true;
      if (cond1 && is_maximal(y, img)) {
        cond2 = false;
        for (int v : u)
          if (core.count(v)) { cond2 = true; break; }
      }
      bool should_be_simplex = cond1 && cond2;
      if (x.has_simplex(u) != should_be_simplex) return false;
    }
    if (static_cast<int>(cur.size()) == dy + 1) return true;
    for (int i = start; i < nv; ++i) {
      cur.push_back(verts[i]);
      if (!rec(i + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  return rec(0);
}

bool fibered_top_criterion(const SimplicialComplex& x, const SimplicialComplex& y,
                           const std::function<int(int)>& f, const std::set<int>& core) {
  int d = y.dim();
  if (x.dim() != d) return false;
  // (i) top simplices of x are exactly the lifts of top simplices of y that
  // meet the core
  int nv = static_cast<int>(x.labels.size());
  std::vector<int> cur;
  bool ok = true;
  std::function<void(int)> rec = [&](int start) {
    if (!ok) return;
    if (static_cast<int>(cur.size()) == d + 1) {
      Simplex u = cur;
      Simplex img;
      bool c1 = image_simplex_of(y, u, f, &img) && static_cast<int>(img.size()) == d + 1;
      bool meets = false;
      for (int v : u)
        if (core.count(v)) { meets = true; break; }
      if (x.has_simplex(u) != (c1 && meets)) ok = false;
      return;
    }
    for (int i = start; i < nv; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
      if (!ok) return;
    }
  };
  rec(0);
  if (!ok) return false;
  // (ii) every top simplex of y lifts inside the core
  for (const auto& tau : y.simplices(d)) {
    // search for u ⊂ core with f(u) = tau, u a simplex of x
    std::vector<std::vector<int>> fibers;
    for (int t : tau) {
      std::vector<int> fib;
      for (int v : core)
        if (f(v) == t) fib.push_back(v);
      if (fib.empty()) return false;
      fibers.push_back(fib);
    }
    std::vector<int> pick(fibers.size(), 0);
    bool found = false;
    for (;;) {
      Simplex u;
      for (size_t i = 0; i < fibers.size(); ++i) u.push_back(fibers[i][pick[i]]);
      std::sort(u.begin(), u.end());
      if (x.has_simplex(u)) { found = true; break; }
      size_t i = 0;
      while (i < pick.size()) {
        if (++pick[i] < static_cast<int>(fibers[i].size())) break;
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) break;
    }
    if (!found) return false;
  }
  return true;
}

int component_count(const SimplicialComplex& x) {
  int n = static_cast<int>(x.labels.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // only vertices that actually occur in the complex count
  std::set<int> present;
  for (const auto& s : x.simplices(0)) present.insert(s[0]);
  for (const auto& e : x.simplices(1)) parent[find(e[0])] = find(e[1]);
  std::set<int> roots;
  for (int v : present) roots.insert(find(v));
  return static_cast<int>(roots.size());
}

std::string complex_to_lines(const SimplicialComplex& x) {
  // maximal simplices suffice to reconstruct the complex, but every simplex
  // is emitted for diffability, one per line, sorted labels
  std::ostringstream os;
  for (int d = 0; d <= x.dim(); ++d)
    for (const auto& s : x.simplices(d)) {
      std::vector<std::string> names;
      for (int v : s) names.push_back(x.labels[v]);
      std::sort(names.begin(), names.end());
      for (size_t i = 0; i < names.size(); ++i) {
        if (i) os << " ";
        os << names[i];
      }
      os << "\n";
    }
  return os.str();
}

SimplicialComplex complex_from_lines(const std::string& text) {
  SimplicialComplex x;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    Simplex s;
    while (ls >> tok) s.push_back(x.add_vertex(tok));
    if (!s.empty()) x.add_simplex(std::move(s));
  }
  return x;
}

std::string chain_to_json(const Chain& c, const std::function<std::string(const Simplex&)>& key_name) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [k, v] : c.coeffs) {
    if (!first) os << ",";
    first = false;
    os << "[\"" << key_name(k) << "\"," << v << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace steinlab
