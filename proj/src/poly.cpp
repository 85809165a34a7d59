#include "cad/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cad {

VarOrder::VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("VarOrder: empty");
  for (size_t i = 0; i < names_.size(); ++i)
    for (size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("VarOrder: duplicate variable " + names_[i]);
}

std::optional<size_t> VarOrder::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

namespace {

// Lex with the highest variable most significant; 1 if a > b.
int expo_cmp(const Expo& a, const Expo& b) {
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

struct ExpoGreater {
  bool operator()(const Expo& a, const Expo& b) const { return expo_cmp(a, b) > 0; }
};

}  // namespace

Polynomial::Polynomial(VarOrderPtr ord, std::vector<std::pair<Expo, Int>> terms)
    : ord_(std::move(ord)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  size_t n = nvars();
  for (auto& [e, c] : terms_) {
    if (e.size() != n) throw std::invalid_argument("Polynomial: exponent width mismatch");
    (void)c;
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return expo_cmp(a.first, b.first) > 0; });
  std::vector<std::pair<Expo, Int>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (!out.empty() && sgn_of(out.back().second) == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Polynomial Polynomial::constant(VarOrderPtr ord, Int v) {
  Polynomial p(ord);
  if (sgn_of(v) != 0) p.terms_.push_back({Expo(ord->size(), 0), std::move(v)});
  return p;
}

Polynomial Polynomial::variable(VarOrderPtr ord, size_t idx) {
  Expo e(ord->size(), 0);
  e.at(idx) = 1;
  return monomial(std::move(ord), std::move(e), 1);
}

Polynomial Polynomial::monomial(VarOrderPtr ord, Expo e, Int c) {
  Polynomial p(std::move(ord));
  if (sgn_of(c) != 0) p.terms_.push_back({std::move(e), std::move(c)});
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (unsigned e : terms_[0].first)
    if (e) return false;
  return true;
}

Int Polynomial::const_value() const {
  assert(is_constant());
  return terms_.empty() ? Int(0) : terms_[0].second;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(ord_ ? ord_ : o.ord_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i >= terms_.size())
      c = -1;
    else if (j >= o.terms_.size())
      c = 1;
    else
      c = expo_cmp(terms_[i].first, o.terms_[j].first);
    if (c > 0)
      r.terms_.push_back(terms_[i++]);
    else if (c < 0)
      r.terms_.push_back(o.terms_[j++]);
    else {
      Int s = terms_[i].second + o.terms_[j].second;
      if (sgn_of(s) != 0) r.terms_.push_back({terms_[i].first, std::move(s)});
      ++i, ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(ord_ ? ord_ : o.ord_);
  if (is_zero() || o.is_zero()) return r;
  std::map<Expo, Int, ExpoGreater> acc;
  Expo e(nvars());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      acc[e] += ca * cb;
    }
  }
  for (auto& [ee, cc] : acc)
    if (sgn_of(cc) != 0) r.terms_.push_back({ee, std::move(cc)});
  return r;
}

Polynomial Polynomial::operator*(const Int& k) const {
  if (sgn_of(k) == 0) return Polynomial(ord_);
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c *= k;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ord_, 1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::optional<Polynomial> Polynomial::divided_by(const Polynomial& g) const {
  if (g.is_zero()) return std::nullopt;
  Polynomial rem = *this;
  Polynomial quo(ord_);
  const Expo& ge = g.terms_.front().first;
  const Int& gc = g.terms_.front().second;
  while (!rem.is_zero()) {
    const Expo& re = rem.terms_.front().first;
    const Int& rc = rem.terms_.front().second;
    Expo qe(re.size());
    for (size_t k = 0; k < re.size(); ++k) {
      if (re[k] < ge[k]) return std::nullopt;
      qe[k] = re[k] - ge[k];
    }
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), gc.get_mpz_t());
    if (sgn_of(r) != 0) return std::nullopt;
    Polynomial m = monomial(ord_, std::move(qe), std::move(q));
    quo = quo + m;
    rem = rem - m * g;
  }
  return quo;
}

int Polynomial::degree(size_t v) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[v]));
  return d;
}

int Polynomial::total_degree() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (unsigned x : e) t += static_cast<int>(x);
    d = std::max(d, t);
  }
  return d;
}

std::optional<size_t> Polynomial::mvar() const {
  for (size_t v = nvars(); v-- > 0;)
    if (degree(v) > 0) return v;
  return std::nullopt;
}

std::vector<size_t> Polynomial::vars_used() const {
  std::vector<size_t> out;
  for (size_t v = 0; v < nvars(); ++v)
    if (degree(v) > 0) out.push_back(v);
  return out;
}

Polynomial Polynomial::derivative(size_t v) const {
  Polynomial r(ord_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Expo ne = e;
    ne[v] -= 1;
    r.terms_.push_back({std::move(ne), c * static_cast<long>(e[v])});
  }
  r.normalize();
  return r;
}

std::vector<std::pair<unsigned, Polynomial>> Polynomial::coeffs_in(size_t v) const {
  std::map<unsigned, Polynomial, std::greater<unsigned>> by_deg;
  for (const auto& [e, c] : terms_) {
    Expo ne = e;
    unsigned d = ne[v];
    ne[v] = 0;
    auto it = by_deg.find(d);
    if (it == by_deg.end()) it = by_deg.emplace(d, Polynomial(ord_)).first;
    it->second.terms_.push_back({std::move(ne), c});
  }
  std::vector<std::pair<unsigned, Polynomial>> out;
  for (auto& [d, p] : by_deg) {
    p.normalize();
    if (!p.is_zero()) out.push_back({d, std::move(p)});
  }
  return out;
}

Polynomial Polynomial::coeff_of(size_t v, unsigned k) const {
  Polynomial r(ord_);
  for (const auto& [e, c] : terms_) {
    if (e[v] != k) continue;
    Expo ne = e;
    ne[v] = 0;
    r.terms_.push_back({std::move(ne), c});
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::ldcf(size_t v) const {
  int d = degree(v);
  if (d < 0) return Polynomial(ord_);
  return coeff_of(v, static_cast<unsigned>(d));
}

Polynomial Polynomial::specialize(size_t v, const Rat& q) const {
  int d = degree(v);
  if (d <= 0) return *this;
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  std::vector<Int> npow(d + 1), dpow(d + 1);
  npow[0] = 1;
  dpow[0] = 1;
  for (int i = 1; i <= d; ++i) npow[i] = npow[i - 1] * num, dpow[i] = dpow[i - 1] * den;
  Polynomial r(ord_);
  for (const auto& [e, c] : terms_) {
    Expo ne = e;
    unsigned k = ne[v];
    ne[v] = 0;
    r.terms_.push_back({std::move(ne), c * npow[k] * dpow[d - k]});
  }
  r.normalize();
  return r;
}

Rat Polynomial::eval(const std::vector<Rat>& point) const {
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat t(c);
    for (size_t v = 0; v < e.size(); ++v) {
      for (unsigned i = 0; i < e[v]; ++i) t *= point.at(v);
    }
    acc += t;
  }
  return acc;
}

Int Polynomial::int_content() const {
  Int g = 0;
  for (const auto& [e, c] : terms_) {
    g = gcd_int(g, c);
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::canonical() const {
  if (is_zero()) return *this;
  Int g = int_content();
  if (sgn_of(terms_.front().second) < 0) g = -g;
  if (g == 1) return *this;
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c /= g;
  return r;
}

Polynomial Polynomial::sign_normalized() const {
  if (is_zero() || sgn_of(terms_.front().second) > 0) return *this;
  return -*this;
}

UPoly Polynomial::to_upoly(size_t v) const {
  std::vector<Int> c(degree(v) + 1);
  if (is_zero()) return UPoly();
  for (const auto& [e, coef] : terms_) {
    for (size_t k = 0; k < e.size(); ++k)
      if (k != v && e[k] != 0) throw std::invalid_argument("to_upoly: polynomial is not univariate in " + ord_->name(v));
    c[e[v]] += coef;
  }
  return UPoly(std::move(c));
}

Polynomial Polynomial::from_upoly(const UPoly& p, VarOrderPtr ord, size_t v) {
  Polynomial r(ord);
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    if (sgn_of(p[i]) == 0) continue;
    Expo e(ord->size(), 0);
    e[v] = static_cast<unsigned>(i);
    r.terms_.push_back({std::move(e), p[i]});
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::reordered(const VarOrderPtr& target) const {
  std::vector<std::optional<size_t>> map(nvars());
  for (size_t i = 0; i < nvars(); ++i) map[i] = target->index_of(ord_->name(i));
  Polynomial r(target);
  for (const auto& [e, c] : terms_) {
    Expo ne(target->size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw std::invalid_argument("reordered: variable " + ord_->name(i) + " missing from target order");
      ne[*map[i]] = e[i];
    }
    r.terms_.push_back({std::move(ne), c});
  }
  r.normalize();
  return r;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int a = c;
    if (first) {
      if (sgn_of(a) < 0) os << "-", a = -a;
    } else {
      os << (sgn_of(a) < 0 ? "-" : "+");
      if (sgn_of(a) < 0) a = -a;
    }
    first = false;
    bool has_var = false;
    for (unsigned x : e)
      if (x) has_var = true;
    if (!has_var || a != 1) os << a.get_str();
    bool need_star = !has_var ? false : (a != 1);
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << "*";
      os << ord_->name(v);
      if (e[v] > 1) os << "^" << e[v];
      need_star = true;
    }
  }
  return os.str();
}

int Polynomial::cmp(const Polynomial& a, const Polynomial& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = expo_cmp(a.terms_[i].first, b.terms_[i].first);
    if (c != 0) return c;
    int s = ::cmp(a.terms_[i].second, b.terms_[i].second);
    if (s != 0) return s;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

PolySet::PolySet(const std::vector<Polynomial>& polys) {
  for (const auto& p : polys) insert(p);
}

void PolySet::insert(const Polynomial& p) {
  Polynomial c = p.canonical();
  if (c.is_constant()) return;
  auto it = std::lower_bound(elems_.begin(), elems_.end(), c);
  if (it != elems_.end() && *it == c) return;
  elems_.insert(it, std::move(c));
}

void PolySet::insert_all(const PolySet& o) {
  for (const auto& p : o.elems_) insert(p);
}

bool PolySet::contains(const Polynomial& p) const {
  Polynomial c = p.canonical();
  auto it = std::lower_bound(elems_.begin(), elems_.end(), c);
  return it != elems_.end() && *it == c;
}

bool PolySet::subset_of(const PolySet& o) const {
  for (const auto& p : elems_)
    if (!o.contains(p)) return false;
  return true;
}

std::string PolySet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ", ";
    s += elems_[i].str();
  }
  return s + "}";
}

namespace {

// Pseudo-remainder lc(B)^(degA-degB+1) * A mod B in the variable v.
Polynomial poly_prem(const Polynomial& A, const Polynomial& B, size_t v) {
  int db = B.degree(v);
  Polynomial lcb = B.ldcf(v);
  Polynomial r = A;
  int e = A.degree(v) - db + 1;
  while (!r.is_zero() && r.degree(v) >= db) {
    Polynomial lcr = r.ldcf(v);
    Expo shift(A.order()->size(), 0);
    shift[v] = static_cast<unsigned>(r.degree(v) - db);
    Polynomial m = Polynomial::monomial(A.order(), std::move(shift), 1);
    r = r * lcb - B * m * lcr;
    --e;
  }
  if (e > 0) r = r * lcb.pow(static_cast<unsigned>(e));
  return r;
}

Polynomial prs_gcd(Polynomial f, Polynomial g, size_t v) {
  if (f.degree(v) < g.degree(v)) std::swap(f, g);
  while (!g.is_zero()) {
    Polynomial r = poly_prem(f, g, v);
    if (!r.is_zero()) r = primitive_part(r, v);
    f = std::move(g);
    g = std::move(r);
  }
  return primitive_part(f, v);
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.canonical();
  if (b.is_zero()) return a.canonical();
  if (a.is_constant() || b.is_constant()) {
    Int g = gcd_int(a.int_content(), b.int_content());
    return Polynomial::constant(a.order() ? a.order() : b.order(), g);
  }
  size_t v = std::max(*a.mvar(), *b.mvar());
  if (a.degree(v) == 0) return gcd(a, content(b, v));
  if (b.degree(v) == 0) return gcd(content(a, v), b);
  Polynomial c = gcd(content(a, v), content(b, v));
  Polynomial g = prs_gcd(primitive_part(a, v), primitive_part(b, v), v);
  return (c * g).sign_normalized();
}

Polynomial content(const Polynomial& f, size_t v) {
  if (f.is_zero()) return f;
  if (f.degree(v) <= 0) return f;
  Polynomial c(f.order());
  for (auto& [d, p] : f.coeffs_in(v)) {
    c = c.is_zero() ? p : gcd(c, p);
    if (c.is_constant() && c.const_value() == 1) break;
  }
  // fix the sign so the primitive part's lex-leading coefficient is positive
  Polynomial prim = *f.divided_by(c);
  if (sgn_of(prim.terms().front().second) < 0) c = -c;
  return c;
}

Polynomial primitive_part(const Polynomial& f, size_t v) {
  if (f.is_zero()) return f;
  if (f.degree(v) <= 0) return Polynomial::constant(f.order(), 1);
  return *f.divided_by(content(f, v));
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, size_t v) {
  VarOrderPtr ord = f.order() ? f.order() : g.order();
  if (f.is_zero() || g.is_zero()) return Polynomial(ord);
  int df = f.degree(v), dg = g.degree(v);
  int sign = 1;
  Polynomial A = f, B = g;
  if (df < dg) {
    std::swap(A, B);
    std::swap(df, dg);
    if ((df & 1) && (dg & 1)) sign = -sign;
  }
  if (dg == 0) {
    // res(A, const-in-v) = B^degA
    return B.pow(static_cast<unsigned>(df)) * Int(sign);
  }
  Polynomial ca = content(A, v), cb = content(B, v);
  A = *A.divided_by(ca);
  B = *B.divided_by(cb);
  Polynomial t = ca.pow(static_cast<unsigned>(dg)) * cb.pow(static_cast<unsigned>(df)) * Int(sign);
  Polynomial gg = Polynomial::constant(ord, 1);
  Polynomial h = Polynomial::constant(ord, 1);
  while (true) {
    int da = A.degree(v), db = B.degree(v);
    int delta = da - db;
    if ((da & 1) && (db & 1)) t = -t;
    Polynomial R = poly_prem(A, B, v);
    A = std::move(B);
    Polynomial div = gg * h.pow(static_cast<unsigned>(delta));
    B = *R.divided_by(div);
    gg = A.ldcf(v);
    if (delta > 0) {
      Polynomial num = gg.pow(static_cast<unsigned>(delta));
      h = delta == 1 ? num : *num.divided_by(h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (B.is_zero()) return Polynomial(ord);
    if (B.degree(v) == 0) {
      int p = A.degree(v);
      Polynomial num = B.pow(static_cast<unsigned>(p));
      Polynomial res = p <= 1 ? num : *num.divided_by(h.pow(static_cast<unsigned>(p - 1)));
      return t * res;
    }
  }
}

Polynomial discriminant(const Polynomial& f, size_t v) {
  int d = f.degree(v);
  if (d < 2) throw std::invalid_argument("discriminant: degree in " + f.order()->name(v) + " must be >= 2");
  Polynomial r = resultant(f, f.derivative(v), v);
  Polynomial q = *r.divided_by(f.ldcf(v));
  if ((d * (d - 1) / 2) % 2 == 1) q = -q;
  return q;
}

std::vector<std::pair<Polynomial, unsigned>> squarefree_decompose(const Polynomial& f, size_t v) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (f.degree(v) <= 0) return out;
  Polynomial fp = f.derivative(v);
  Polynomial a = gcd(f, fp);
  if (a.is_constant()) {
    out.push_back({primitive_part(f, v).canonical(), 1});
    return out;
  }
  Polynomial b = *f.divided_by(a);
  Polynomial c = *fp.divided_by(a);
  Polynomial d = c - b.derivative(v);
  unsigned i = 1;
  while (b.degree(v) > 0) {
    Polynomial p = gcd(b, d);
    if (!p.is_constant()) out.push_back({p.canonical(), i});
    b = *b.divided_by(p);
    c = *d.divided_by(p);
    d = c - b.derivative(v);
    ++i;
  }
  return out;
}

std::vector<Polynomial> squarefree_basis(const std::vector<Polynomial>& polys, size_t v) {
  std::vector<Polynomial> basis;
  auto push = [&](const Polynomial& p) {
    Polynomial c = p.canonical();
    if (c.degree(v) <= 0) return;
    if (std::find(basis.begin(), basis.end(), c) == basis.end()) basis.push_back(c);
  };
  // low-degree elements first so that products of earlier entries reduce by
  // trial division instead of a costly squarefree decomposition
  std::vector<Polynomial> inputs;
  for (const auto& f : polys)
    if (f.degree(v) > 0) inputs.push_back(primitive_part(f, v));
  std::stable_sort(inputs.begin(), inputs.end(), [v](const Polynomial& a, const Polynomial& b) {
    return a.total_degree() < b.total_degree();
  });
  for (const auto& f : inputs) {
    Polynomial rest = f;
    bool progress = true;
    while (progress && rest.degree(v) > 0) {
      progress = false;
      for (const auto& b : basis) {
        auto q = rest.divided_by(b);
        if (q) {
          rest = std::move(*q);
          progress = true;
          break;
        }
      }
    }
    if (rest.degree(v) <= 0) continue;
    for (auto& [p, mult] : squarefree_decompose(primitive_part(rest, v), v)) push(p);
  }
  // pairwise gcd-splitting until coprime
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size() && !changed; ++i) {
      for (size_t j = i + 1; j < basis.size() && !changed; ++j) {
        Polynomial g = gcd(basis[i], basis[j]);
        if (g.is_constant()) continue;
        Polynomial qi = *basis[i].divided_by(g);
        Polynomial qj = *basis[j].divided_by(g);
        std::vector<Polynomial> next;
        for (size_t k = 0; k < basis.size(); ++k)
          if (k != i && k != j) next.push_back(basis[k]);
        basis = std::move(next);
        push(g.canonical());
        push(qi.canonical());
        push(qj.canonical());
        changed = true;
      }
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

unsigned multiplicity_of(const Polynomial& f, const Polynomial& b) {
  unsigned m = 0;
  Polynomial r = f;
  while (true) {
    auto q = r.divided_by(b);
    if (!q) return m;
    r = *q;
    ++m;
  }
}

}  // namespace cad
