#include "steinlab/exact.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace steinlab {

Int fdiv(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("fdiv by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Int fmod(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, s1 = 0;
  Int old_t = 0, t1 = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s1; old_s = s1; s1 = tmp;
    tmp = old_t - q * t1; old_t = t1; t1 = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  s = old_s; t = old_t;
  return old_r;
}

Mat mat_identity(int n) {
  Mat m(n, Row(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat t(m[0].size(), Row(m.size(), 0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size(), k = b.size(), mcols = b[0].size();
  Mat c(n, Row(mcols, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < mcols; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

bool mat_eq(const Mat& a, const Mat& b) { return a == b; }

std::string mat_to_string(const Mat& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) os << "|";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ",";
      os << m[i][j];
    }
  }
  return os.str();
}

namespace {

// Shared elimination; when u != nullptr the same row operations are mirrored.
void hnf_in_place(Mat& m, Mat* u) {
  if (m.empty()) return;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    if (u) std::swap((*u)[piv], (*u)[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Int s, t;
      Int g = xgcd(m[r][c], m[i][c], s, t);
      Int ar = m[r][c] / g, ai = m[i][c] / g;
      for (int j = 0; j < cols; ++j) {
        Int nr = s * m[r][j] + t * m[i][j];
        Int ni = ar * m[i][j] - ai * m[r][j];
        m[r][j] = nr; m[i][j] = ni;
      }
      if (u) {
        int w = static_cast<int>((*u)[0].size());
        for (int j = 0; j < w; ++j) {
          Int nr = s * (*u)[r][j] + t * (*u)[i][j];
          Int ni = ar * (*u)[i][j] - ai * (*u)[r][j];
          (*u)[r][j] = nr; (*u)[i][j] = ni;
        }
      }
    }
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
      if (u) for (auto& x : (*u)[r]) x = -x;
    }
    for (int i = 0; i < r; ++i) {
      Int q = fdiv(m[i][c], m[r][c]);
      if (q == 0) continue;
      for (int j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
      if (u) {
        int w = static_cast<int>((*u)[0].size());
        for (int j = 0; j < w; ++j) (*u)[i][j] -= q * (*u)[r][j];
      }
    }
    ++r;
  }
}

bool row_is_zero(const Row& r) {
  for (const auto& x : r) if (x != 0) return false;
  return true;
}

}  // namespace

Mat hnf(Mat m) {
  hnf_in_place(m, nullptr);
  while (!m.empty() && row_is_zero(m.back())) m.pop_back();
  return m;
}

HnfTransform hnf_transform(Mat m) {
  HnfTransform res;
  res.u = mat_identity(static_cast<int>(m.size()));
  hnf_in_place(m, &res.u);
  res.rank = 0;
  for (const auto& r : m)
    if (!row_is_zero(r)) ++res.rank;
  res.h = std::move(m);
  return res;
}

int mat_rank(const Mat& m) { return static_cast<int>(hnf(m).size()); }

Mat left_kernel(const Mat& m) {
  if (m.empty()) return {};
  HnfTransform ht = hnf_transform(m);
  Mat ker;
  for (size_t i = 0; i < ht.h.size(); ++i)
    if (row_is_zero(ht.h[i])) ker.push_back(ht.u[i]);
  return hnf(std::move(ker));
}

Mat right_kernel(const Mat& m, int cols) {
  if (m.empty()) return mat_identity(cols);
  return left_kernel(mat_transpose(m));
}

Mat saturation(const Mat& m, int cols) {
  Mat dropped;
  for (const auto& r : m)
    if (!row_is_zero(r)) dropped.push_back(r);
  if (dropped.empty()) return {};
  Mat orth = right_kernel(dropped, cols);
  if (orth.empty()) return mat_identity(cols);
  return right_kernel(orth, cols);
}

bool hnf_contains(const Mat& h, const Row& v) {
  Row w = v;
  for (const auto& row : h) {
    int c = 0;
    while (c < static_cast<int>(row.size()) && row[c] == 0) ++c;
    if (c == static_cast<int>(row.size())) continue;
    if (w[c] % row[c] != 0) {
      // not reducible at this pivot; continue, final zero test decides
      continue;
    }
    Int q = w[c] / row[c];
    if (q == 0) continue;
    for (size_t j = 0; j < w.size(); ++j) w[j] -= q * row[j];
  }
  return row_is_zero(w);
}

std::optional<Row> solve_left(const Mat& b, const Row& v) {
  if (b.empty()) return row_is_zero(v) ? std::optional<Row>(Row{}) : std::nullopt;
  HnfTransform ht = hnf_transform(b);
  Row w = v;
  Row coeff(b.size(), 0);
  for (size_t i = 0; i < ht.h.size(); ++i) {
    const Row& row = ht.h[i];
    int c = 0;
    while (c < static_cast<int>(row.size()) && row[c] == 0) ++c;
    if (c == static_cast<int>(row.size())) continue;
    if (w[c] % row[c] != 0) return std::nullopt;
    Int q = w[c] / row[c];
    if (q == 0) continue;
    for (size_t j = 0; j < w.size(); ++j) w[j] -= q * row[j];
    coeff[i] = q;
  }
  if (!row_is_zero(w)) return std::nullopt;
  Row x(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) {
    if (coeff[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) x[j] += coeff[i] * ht.u[i][j];
  }
  return x;
}

namespace {

// Sparse matrix for SNF: row maps plus per-column nonzero row sets.
struct Sparse {
  int nrows, ncols;
  std::vector<std::map<int, Int>> rows;
  std::vector<std::set<int>> cols;

  Sparse(const Mat& m) {
    nrows = static_cast<int>(m.size());
    ncols = nrows ? static_cast<int>(m[0].size()) : 0;
    rows.resize(nrows);
    cols.resize(ncols);
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j)
        if (m[i][j] != 0) { rows[i][j] = m[i][j]; cols[j].insert(i); }
  }

  Int get(int i, int j) const {
    auto it = rows[i].find(j);
    return it == rows[i].end() ? Int(0) : it->second;
  }

  void set(int i, int j, const Int& v) {
    if (v == 0) {
      rows[i].erase(j);
      cols[j].erase(i);
    } else {
      rows[i][j] = v;
      cols[j].insert(i);
    }
  }

  // row i += q * row k
  void row_axpy(int i, int k, const Int& q) {
    if (q == 0) return;
    for (const auto& [j, v] : rows[k]) set(i, j, get(i, j) + q * v);
  }

  // two-row transform: (r_i, r_k) <- (s*r_i + t*r_k, a*r_k - b*r_i)
  void row_combine(int i, int k, const Int& s, const Int& t, const Int& a, const Int& b) {
    std::set<int> support;
    for (const auto& [j, v] : rows[i]) support.insert(j);
    for (const auto& [j, v] : rows[k]) support.insert(j);
    for (int j : support) {
      Int vi = get(i, j), vk = get(k, j);
      set(i, j, s * vi + t * vk);
      set(k, j, a * vk - b * vi);
    }
  }

  void col_axpy(int j, int k, const Int& q) {
    if (q == 0) return;
    std::vector<int> rows_k(cols[k].begin(), cols[k].end());
    for (int i : rows_k) set(i, j, get(i, j) + q * get(i, k));
  }

  void col_combine(int j, int k, const Int& s, const Int& t, const Int& a, const Int& b) {
    std::set<int> support = cols[j];
    for (int i : cols[k]) support.insert(i);
    for (int i : support) {
      Int vj = get(i, j), vk = get(i, k);
      set(i, j, s * vj + t * vk);
      set(i, k, a * vk - b * vj);
    }
  }
};

}  // namespace

std::vector<Int> snf_invariant_factors(const Mat& m) {
  Sparse sp(m);
  std::vector<Int> diag;
  std::vector<bool> row_done(sp.nrows, false), col_done(sp.ncols, false);

  for (;;) {
    // pivot selection: minimal |value|, then minimal fill-in estimate
    int pi = -1, pj = -1;
    Int pv = 0;
    long long pfill = 0;
    for (int i = 0; i < sp.nrows; ++i) {
      if (row_done[i] || sp.rows[i].empty()) continue;
      for (const auto& [j, v] : sp.rows[i]) {
        if (col_done[j]) continue;
        Int av = abs(v);
        long long fill = (long long)(sp.rows[i].size() - 1) * (long long)(sp.cols[j].size() - 1);
        if (pi < 0 || av < pv || (av == pv && fill < pfill)) {
          pi = i; pj = j; pv = av; pfill = fill;
          if (pv == 1 && pfill == 0) break;
        }
      }
      if (pi >= 0 && pv == 1 && pfill == 0) break;
    }
    if (pi < 0) break;

    // clear column and row of the pivot
    for (;;) {
      bool clean = true;
      std::vector<int> col_rows(sp.cols[pj].begin(), sp.cols[pj].end());
      for (int i : col_rows) {
        if (i == pi || row_done[i]) continue;
        Int a = sp.get(i, pj), p = sp.get(pi, pj);
        if (a == 0) continue;
        if (a % p == 0) {
          sp.row_axpy(i, pi, -(a / p));
        } else {
          Int s, t;
          Int g = xgcd(p, a, s, t);
          sp.row_combine(pi, i, s, t, p / g, a / g);
        }
        clean = false;
      }
      std::vector<int> row_cols;
      for (const auto& [j, v] : sp.rows[pi]) row_cols.push_back(j);
      for (int j : row_cols) {
        if (j == pj || col_done[j]) continue;
        Int a = sp.get(pi, j), p = sp.get(pi, pj);
        if (a == 0) continue;
        if (a % p == 0) {
          sp.col_axpy(j, pj, -(a / p));
        } else {
          Int s, t;
          Int g = xgcd(p, a, s, t);
          sp.col_combine(pj, j, s, t, p / g, a / g);
        }
        clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(sp.get(pi, pj)));
    row_done[pi] = true;
    col_done[pj] = true;
  }

  // enforce the divisibility chain by pairwise gcd/lcm fixups
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < diag.size(); ++i)
      for (size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] == 0) continue;
        Int s, t;
        Int g = xgcd(diag[i], diag[j], s, t);
        Int l = diag[i] / g * diag[j];
        diag[i] = g; diag[j] = l;
        changed = true;
      }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

int rank_mod_p(const Mat& m, std::uint64_t p) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  Int ip = Int(p);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      a[i][j] = static_cast<std::uint64_t>(fmod(m[i][j], ip));
  auto powmod = [p](std::uint64_t b, std::uint64_t e) {
    unsigned __int128 r = 1, bb = b % p;
    while (e) {
      if (e & 1) r = r * bb % p;
      bb = bb * bb % p;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
  };
  int rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = powmod(a[r][c], p - 2);
    for (size_t j = c; j < cols; ++j)
      a[r][j] = static_cast<std::uint64_t>((unsigned __int128)a[r][j] * inv % p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (size_t j = c; j < cols; ++j) {
        unsigned __int128 sub = (unsigned __int128)f * a[r][j] % p;
        a[i][j] = static_cast<std::uint64_t>((a[i][j] + p - (std::uint64_t)sub) % p);
      }
    }
    ++r;
    ++rank;
  }
  return rank;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long long SplitMix64::range(long long lo, long long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long long>(next() % span);
}

}  // namespace steinlab
