#include "steinlab/arith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace steinlab {

namespace {

bool is_squarefree(long d) {
  long ad = d < 0 ? -d : d;
  for (long f = 2; f * f <= ad; ++f)
    if (ad % (f * f) == 0) return false;
  return true;
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

}  // namespace

RingDesc RingDesc::integers() {
  RingDesc r;
  r.kind = RingKind::Integers;
  r.disc = 1;
  return r;
}

RingDesc RingDesc::imag_quadratic(long d) {
  if (d >= 0 || !is_squarefree(d))
    throw std::invalid_argument("imag_quadratic: d must be squarefree and negative");
  RingDesc r;
  r.kind = RingKind::ImagQuadratic;
  r.d = d;
  // integral basis (1, omega): omega = sqrt(d) unless d = 1 mod 4, where
  // omega = (1+sqrt(d))/2
  long dm4 = ((d % 4) + 4) % 4;
  if (dm4 == 1) {
    r.half_basis = true;
    r.disc = d;
    r.omega_trace = 1;
    r.omega_norm = (Int(1) - d) / 4;
  } else {
    r.half_basis = false;
    r.disc = Int(4) * d;
    r.omega_trace = 0;
    r.omega_norm = -Int(d);
  }
  return r;
}

RingDesc RingDesc::finite_field(long p) {
  if (!is_prime_long(p)) throw std::invalid_argument("finite_field: p must be prime");
  RingDesc r;
  r.kind = RingKind::FiniteField;
  r.p = p;
  return r;
}

std::string RingDesc::to_string() const {
  switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::ImagQuadratic: return "Q(sqrt(" + std::to_string(d) + "))";
    case RingKind::FiniteField: return "F_" + std::to_string(p);
  }
  return "?";
}

RingDesc RingDesc::parse(const std::string& s) {
  if (s == "Z") return integers();
  if (s.rfind("F_", 0) == 0) return finite_field(std::stol(s.substr(2)));
  if (s.rfind("Q(sqrt(", 0) == 0 && s.size() > 9 && s.substr(s.size() - 2) == "))")
    return imag_quadratic(std::stol(s.substr(7, s.size() - 9)));
  throw std::invalid_argument("unrecognized ring descriptor: " + s);
}

RingElem re_zero() { return {}; }
RingElem re_one() { return {1, 0}; }
RingElem re_from_int(const Int& v) { return {v, 0}; }

RingElem re_add(const RingDesc& r, const RingElem& x, const RingElem& y) {
  if (r.kind == RingKind::FiniteField) return {fmod(x.a + y.a, Int(r.p)), 0};
  return {x.a + y.a, x.b + y.b};
}

RingElem re_sub(const RingDesc& r, const RingElem& x, const RingElem& y) {
  if (r.kind == RingKind::FiniteField) return {fmod(x.a - y.a, Int(r.p)), 0};
  return {x.a - y.a, x.b - y.b};
}

RingElem re_neg(const RingDesc& r, const RingElem& x) {
  if (r.kind == RingKind::FiniteField) return {fmod(-x.a, Int(r.p)), 0};
  return {-x.a, -x.b};
}

RingElem re_mul(const RingDesc& r, const RingElem& x, const RingElem& y) {
  switch (r.kind) {
    case RingKind::Integers: return {x.a * y.a, 0};
    case RingKind::FiniteField: return {fmod(x.a * y.a, Int(r.p)), 0};
    case RingKind::ImagQuadratic: {
      // (a1 + b1 w)(a2 + b2 w), w^2 = t w - m
      Int a = x.a * y.a - x.b * y.b * r.omega_norm;
      Int b = x.a * y.b + x.b * y.a + x.b * y.b * r.omega_trace;
      return {a, b};
    }
  }
  return {};
}

RingElem re_conj(const RingDesc& r, const RingElem& x) {
  if (!r.is_quadratic()) return x;
  // conj(w) = trace(w) - w
  return {x.a + r.omega_trace * x.b, -x.b};
}

Int re_norm(const RingDesc& r, const RingElem& x) {
  switch (r.kind) {
    case RingKind::Integers: return x.a * x.a;
    case RingKind::FiniteField: return x.a == 0 ? Int(0) : Int(1);
    case RingKind::ImagQuadratic:
      return x.a * x.a + r.omega_trace * x.a * x.b + r.omega_norm * x.b * x.b;
  }
  return 0;
}

bool re_is_zero(const RingElem& x) { return x.a == 0 && x.b == 0; }

bool re_is_unit(const RingDesc& r, const RingElem& x) {
  switch (r.kind) {
    case RingKind::Integers: return x.a == 1 || x.a == -1;
    case RingKind::FiniteField: return x.a != 0;
    case RingKind::ImagQuadratic: return re_norm(r, x) == 1;
  }
  return false;
}

Int elem_height(const RingDesc& r, const RingElem& x) {
  if (r.kind == RingKind::Integers) return abs(x.a);
  return re_norm(r, x);
}

std::vector<RingElem> ring_units(const RingDesc& r) {
  switch (r.kind) {
    case RingKind::Integers: return {{1, 0}, {-1, 0}};
    case RingKind::FiniteField: {
      std::vector<RingElem> u;
      for (long v = 1; v < r.p; ++v) u.push_back({Int(v), 0});
      return u;
    }
    case RingKind::ImagQuadratic: {
      if (r.d == -1) return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      if (r.d == -3)
        return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
      return {{1, 0}, {-1, 0}};
    }
  }
  return {};
}

std::vector<RingElem> enumerate_elems(const RingDesc& r, const Int& bound) {
  std::vector<RingElem> out;
  if (r.kind == RingKind::Integers) {
    for (Int a = -bound; a <= bound; ++a) out.push_back({a, 0});
    return out;
  }
  if (r.kind == RingKind::FiniteField) {
    for (long v = 0; v < r.p; ++v) out.push_back({Int(v), 0});
    return out;
  }
  // N(a + b w) = a^2 + t a b + m b^2 <= bound; m > 0 so |b| <= sqrt(4m*bound)/..
  // scan a generous box and filter exactly
  Int blim = 1;
  while (r.omega_norm * blim * blim <= bound * 4) ++blim;
  Int alim = 1;
  while (alim * alim <= bound * 4) ++alim;
  alim += blim * abs(r.omega_trace);
  for (Int a = -alim; a <= alim; ++a)
    for (Int b = -blim; b <= blim; ++b) {
      RingElem x{a, b};
      if (re_norm(r, x) <= bound) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string elem_to_string(const RingElem& x) {
  std::ostringstream os;
  if (x.b == 0) {
    os << x.a;
  } else {
    if (x.a != 0) os << x.a << (x.b > 0 ? "+" : "");
    if (x.b == 1) os << "w";
    else if (x.b == -1) os << "-w";
    else os << x.b << "w";
  }
  return os.str();
}

RingElem parse_elem(const std::string& s) {
  // accepts "a", "bw", "a+bw", "a-bw" with optional signs and "w" == "1w"
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c)) && c != '*') t += c;
  if (t.empty()) throw std::invalid_argument("empty ring element");
  size_t wpos = t.find('w');
  if (wpos == std::string::npos) return {Int(t), 0};
  // split off the coefficient of w: scan back from wpos to the sign that
  // starts the w-term
  size_t start = 0;
  for (size_t i = wpos; i > 0; --i) {
    char c = t[i - 1];
    if (c == '+' || c == '-') { start = i - 1; break; }
    if (!isdigit(static_cast<unsigned char>(c))) { start = i; break; }
  }
  std::string apart = t.substr(0, start);
  std::string bpart = t.substr(start, wpos - start);
  if (bpart.empty() || bpart == "+") bpart = "1";
  if (bpart == "-") bpart = "-1";
  if (!bpart.empty() && bpart[0] == '+') bpart = bpart.substr(1);
  if (!apart.empty() && apart[0] == '+') apart = apart.substr(1);
  Int a = apart.empty() ? Int(0) : Int(apart);
  return {a, Int(bpart)};
}

// --- Ideal ------------------------------------------------------------------

Int Ideal::norm() const {
  if (zero) return 0;
  if (ring.kind == RingKind::Integers) return m00;
  return m00 * m11;
}

bool Ideal::is_unit_ideal() const {
  if (zero) return false;
  if (ring.kind == RingKind::Integers) return m00 == 1;
  return m00 == 1 && m11 == 1;
}

bool Ideal::contains(const RingElem& x) const {
  if (zero) return re_is_zero(x);
  if (ring.kind == RingKind::Integers) return x.a % m00 == 0;
  // reduce against rows (m00, m01), (0, m11) in echelon order
  if (x.a % m00 != 0) return false;
  Int q = x.a / m00;
  return (x.b - q * m01) % m11 == 0;
}

bool Ideal::operator==(const Ideal& o) const {
  return ring == o.ring && zero == o.zero && m00 == o.m00 && m01 == o.m01 &&
         m11 == o.m11;
}

std::string Ideal::to_string() const {
  if (zero) return "(0)";
  std::ostringstream os;
  if (ring.kind == RingKind::Integers) {
    os << m00;
  } else {
    os << m00 << " " << m01 << " 0 " << m11;
  }
  return os.str();
}

Ideal ideal_zero(const RingDesc& r) {
  Ideal i;
  i.ring = r;
  i.zero = true;
  return i;
}

Ideal ideal_unit(const RingDesc& r) {
  Ideal i;
  i.ring = r;
  i.m00 = 1;
  i.m01 = 0;
  i.m11 = 1;
  return i;
}

namespace {

Ideal ideal_from_rows(const RingDesc& r, Mat rows) {
  Mat h = hnf(std::move(rows));
  Ideal i;
  i.ring = r;
  if (r.kind == RingKind::Integers) {
    if (h.empty()) throw std::invalid_argument("zero ideal");
    i.m00 = h[0][0];
    return i;
  }
  if (h.size() != 2)
    throw std::invalid_argument("ideal basis does not have full rank");
  // rows (m00, m01), (0, m11); canonical HNF here puts the pivot of row 2 in
  // the omega column
  i.m00 = h[0][0];
  i.m01 = h[0][1];
  i.m11 = h[1][1];
  return i;
}

Mat ideal_rows(const Ideal& i) {
  if (i.ring.kind == RingKind::Integers) return {{i.m00}};
  return {{i.m00, i.m01}, {Int(0), i.m11}};
}

std::vector<RingElem> ideal_basis_elems(const Ideal& i) {
  if (i.ring.kind == RingKind::Integers) return {{i.m00, 0}};
  return {{i.m00, i.m01}, {Int(0), i.m11}};
}

}  // namespace

Ideal ideal_principal(const RingDesc& r, const RingElem& g) {
  return ideal_from_generators(r, {g});
}

Ideal ideal_from_generators(const RingDesc& r, const std::vector<RingElem>& gens) {
  if (r.kind == RingKind::FiniteField)
    throw std::invalid_argument("ideals of finite fields are unused");
  bool all_zero = true;
  for (const auto& g : gens)
    if (!re_is_zero(g)) all_zero = false;
  if (gens.empty() || all_zero) throw std::invalid_argument("zero ideal");
  Mat rows;
  RingElem w{0, 1};
  for (const auto& g : gens) {
    if (re_is_zero(g)) continue;
    rows.push_back({g.a, g.b});
    if (r.is_quadratic()) {
      RingElem gw = re_mul(r, g, w);
      rows.push_back({gw.a, gw.b});
    }
  }
  if (r.kind == RingKind::Integers) {
    for (auto& row : rows) row.resize(1);
  }
  return ideal_from_rows(r, std::move(rows));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("ideal ring mismatch");
  if (a.zero || b.zero) return ideal_zero(a.ring);
  std::vector<RingElem> gens;
  for (const auto& x : ideal_basis_elems(a))
    for (const auto& y : ideal_basis_elems(b)) gens.push_back(re_mul(a.ring, x, y));
  return ideal_from_generators(a.ring, gens);
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("ideal ring mismatch");
  if (a.zero) return b;
  if (b.zero) return a;
  Mat rows = ideal_rows(a);
  for (auto& r : ideal_rows(b)) rows.push_back(r);
  return ideal_from_rows(a.ring, std::move(rows));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("ideal ring mismatch");
  if (a.zero || b.zero) return ideal_zero(a.ring);
  Mat ra = ideal_rows(a), rb = ideal_rows(b);
  Mat stacked = ra;
  for (auto& r : rb) stacked.push_back(r);
  Mat ker = left_kernel(stacked);
  Mat rows;
  for (const auto& k : ker) {
    Row v(ra[0].size(), 0);
    for (size_t i = 0; i < ra.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) v[j] += k[i] * ra[i][j];
    rows.push_back(v);
  }
  return ideal_from_rows(a.ring, std::move(rows));
}

Ideal ideal_conjugate(const Ideal& a) {
  if (a.zero) return a;
  if (a.ring.kind == RingKind::Integers) return a;
  Mat rows;
  for (const auto& x : ideal_basis_elems(a)) {
    RingElem c = re_conj(a.ring, x);
    rows.push_back({c.a, c.b});
  }
  return ideal_from_rows(a.ring, std::move(rows));
}

std::vector<RingElem> ideal_residues(const Ideal& i) {
  if (i.zero) throw std::invalid_argument("residues of the zero ideal");
  std::vector<RingElem> out;
  if (i.ring.kind == RingKind::Integers) {
    for (Int a = 0; a < i.m00; ++a) out.push_back({a, 0});
    return out;
  }
  for (Int a = 0; a < i.m00; ++a)
    for (Int b = 0; b < i.m11; ++b) out.push_back({a, b});
  return out;
}

// --- Quadratic forms and class groups ---------------------------------------

bool QForm::operator<(const QForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

QForm reduce_form(QForm f) {
  // Gauss reduction of a positive definite form
  for (;;) {
    if (f.b > f.a || f.b <= -f.a) {
      // normalize b into (-a, a]
      Int q = fdiv(f.b + f.a, 2 * f.a);
      Int b2 = f.b - 2 * q * f.a;
      Int c2 = f.c - q * f.b + q * q * f.a;
      f.b = b2;
      f.c = c2;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    break;
  }
  // boundary fixups: (a,-a,c) ~ (a,a,c) and (a,-b,a) ~ (a,b,a)
  if (f.b == -f.a) f.b = f.a;
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QForm form_of_ideal(const Ideal& i) {
  if (i.zero) throw std::invalid_argument("form of the zero ideal");
  const RingDesc& r = i.ring;
  if (!r.is_quadratic()) throw std::invalid_argument("form of a non-quadratic ideal");
  RingElem alpha{i.m00, i.m01}, beta{0, i.m11};
  Int n = i.norm();
  Int A = re_norm(r, alpha) / n;
  Int C = re_norm(r, beta) / n;
  Int B = (re_norm(r, re_add(r, alpha, beta)) - re_norm(r, alpha) - re_norm(r, beta)) / n;
  return reduce_form({A, B, C});
}

int ClassGroup::cls_neg(int i) const {
  for (int j = 0; j < order; ++j)
    if (table[i][j] == 0) return j;
  throw std::logic_error("class group table has no inverse");
}

namespace {

Ideal ideal_of_form(const RingDesc& r, const QForm& f) {
  // reduced form (a,b,c) of disc D corresponds to the ideal aZ + ((-b+sqrt(D))/2)Z
  Int s;  // (-b+sqrt(D))/2 written as s + omega
  if (r.half_basis) {
    // sqrt(D) = sqrt(d) = 2*omega - 1, so (-b+sqrt(D))/2 = (-b-1)/2 + omega
    s = (-f.b - 1) / 2;
  } else {
    // sqrt(D) = 2*sqrt(d) = 2*omega, so (-b+sqrt(D))/2 = -b/2 + omega
    s = -f.b / 2;
  }
  Mat rows = {{f.a, Int(0)}, {s, Int(1)}};
  return ideal_from_rows(r, std::move(rows));
}

}  // namespace

ClassGroup class_group(const RingDesc& r) {
  if (r.kind == RingKind::FiniteField)
    throw std::invalid_argument("class groups of fields are trivial and unused");
  ClassGroup cg;
  cg.ring = r;
  if (r.kind == RingKind::Integers) {
    cg.order = 1;
    cg.reps = {ideal_unit(r)};
    cg.rep_forms = {QForm{1, 0, 0}};
    cg.table = {{0}};
    return cg;
  }
  Int D = r.disc;
  std::vector<QForm> forms;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (fmod(b * b - D, Int(4) * a) != 0) continue;
      Int c = (b * b - D) / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      forms.push_back({a, b, c});
    }
  }
  std::sort(forms.begin(), forms.end());
  cg.order = static_cast<int>(forms.size());
  // One ideal per reduced form; each representative is labeled by the reduced
  // form of the ideal itself (form_of_ideal is constant on ideal classes), so
  // lookups by form are consistent with ideal arithmetic by construction.
  std::vector<std::pair<QForm, Ideal>> labeled;
  for (const auto& f : forms) {
    Ideal rep = ideal_of_form(r, f);
    labeled.push_back({form_of_ideal(rep), rep});
  }
  std::sort(labeled.begin(), labeled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  {
    std::vector<QForm> labels;
    for (const auto& [f, i] : labeled) labels.push_back(f);
    std::vector<QForm> sorted_forms = forms;
    std::sort(sorted_forms.begin(), sorted_forms.end());
    if (labels != sorted_forms)
      throw std::logic_error("class labels do not biject with reduced forms");
  }
  QForm principal = r.half_basis ? QForm{1, 1, (Int(1) - r.d) / 4}
                                 : QForm{1, 0, -Int(r.d)};
  auto it = std::find_if(labeled.begin(), labeled.end(),
                         [&](const auto& p) { return p.first == principal; });
  if (it == labeled.end()) throw std::logic_error("principal form missing");
  std::rotate(labeled.begin(), it, it + 1);
  for (const auto& [f, i] : labeled) {
    cg.rep_forms.push_back(f);
    cg.reps.push_back(i);
  }
  auto index_of_form = [&](const QForm& f) {
    for (int k = 0; k < cg.order; ++k)
      if (cg.rep_forms[k] == f) return k;
    throw std::logic_error("reduced form not among class representatives");
  };
  cg.table.assign(cg.order, std::vector<int>(cg.order, 0));
  for (int i = 0; i < cg.order; ++i)
    for (int j = 0; j < cg.order; ++j)
      cg.table[i][j] = index_of_form(form_of_ideal(ideal_product(cg.reps[i], cg.reps[j])));
  return cg;
}

IdealClass ideal_class(const Ideal& i, const ClassGroup& cg) {
  if (i.zero) throw std::invalid_argument("class of the zero ideal");
  if (!(i.ring == cg.ring)) throw std::invalid_argument("ideal/class group ring mismatch");
  if (cg.ring.kind == RingKind::Integers) return {0};
  QForm f = form_of_ideal(i);
  for (int k = 0; k < cg.order; ++k)
    if (cg.rep_forms[k] == f) return {k};
  throw std::logic_error("ideal class not found");
}

}  // namespace steinlab
