#include "cad/upoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace cad {

void UPoly::trim() {
  while (!c_.empty() && sgn_of(c_.back()) == 0) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] += o.c_[i];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] -= o.c_[i];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const Int& k) const {
  if (sgn_of(k) == 0) return UPoly();
  UPoly r(*this);
  for (auto& x : r.c_) x *= k;
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Int> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

Int UPoly::content() const {
  Int g = 0;
  for (const auto& x : c_) {
    g = gcd_int(g, x);
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return UPoly();
  Int g = content();
  if (sgn_of(lc()) < 0) g = -g;
  UPoly r(*this);
  for (auto& x : r.c_) x /= g;
  return r;
}

UPoly UPoly::primitive_keep_sign() const {
  if (is_zero()) return UPoly();
  Int g = content();
  UPoly r(*this);
  for (auto& x : r.c_) x /= g;
  return r;
}

Int UPoly::eval_int(const Int& x) const {
  Int r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Rat UPoly::eval_rat(const Rat& x) const {
  Rat r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Int UPoly::eval_homog(const Int& p, const Int& q) const {
  // q^deg * f(p/q)
  if (is_zero()) return 0;
  Int r = 0, qp = 1;
  for (size_t i = c_.size(); i-- > 0;) {
    r = r * p + c_[i] * qp;
    if (i > 0) qp *= q;
  }
  return r;
}

int UPoly::sign_at(const Rat& x) const {
  if (is_zero()) return 0;
  Int r = 0;
  const Int& p = x.get_num();
  const Int& q = x.get_den();
  Int qp = 1;
  for (size_t i = c_.size(); i-- > 0;) {
    r = r * p + c_[i] * qp;
    if (i > 0) qp *= q;
  }
  return sgn_of(r);
}

UPoly UPoly::shifted_by_one() const {
  // Synthetic Taylor shift: repeatedly accumulate.
  std::vector<Int> r = c_;
  for (size_t i = 1; i < r.size(); ++i)
    for (size_t j = r.size() - 1; j >= i; --j) r[j - 1] += r[j];
  return UPoly(std::move(r));
}

UPoly UPoly::reversed() const {
  std::vector<Int> r(c_.rbegin(), c_.rend());
  return UPoly(std::move(r));
}

UPoly UPoly::scale_pow2(unsigned k) const {
  std::vector<Int> r = c_;
  for (size_t i = 1; i < r.size(); ++i) {
    Int t;
    mpz_mul_2exp(t.get_mpz_t(), r[i].get_mpz_t(), k * i);
    r[i] = t;
  }
  return UPoly(std::move(r));
}

UPoly UPoly::half_arg_scaled() const {
  // 2^deg * f(x/2): coefficient i gains 2^(deg-i)
  if (is_zero()) return UPoly();
  std::vector<Int> r = c_;
  unsigned n = static_cast<unsigned>(degree());
  for (size_t i = 0; i < r.size(); ++i) {
    Int t;
    mpz_mul_2exp(t.get_mpz_t(), r[i].get_mpz_t(), n - i);
    r[i] = t;
  }
  return UPoly(std::move(r));
}

std::optional<UPoly> UPoly::divided_by(const UPoly& g) const {
  if (g.is_zero()) return std::nullopt;
  if (is_zero()) return UPoly();
  if (degree() < g.degree()) return std::nullopt;
  std::vector<Int> rem = c_;
  std::vector<Int> quo(degree() - g.degree() + 1);
  for (int i = degree() - g.degree(); i >= 0; --i) {
    Int& top = rem[i + g.degree()];
    if (sgn_of(top) == 0) continue;
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), g.lc().get_mpz_t());
    if (sgn_of(r) != 0) return std::nullopt;
    quo[i] = q;
    for (int j = 0; j <= g.degree(); ++j) rem[i + j] -= q * g[j];
  }
  for (const auto& x : rem)
    if (sgn_of(x) != 0) return std::nullopt;
  return UPoly(std::move(quo));
}

UPoly UPoly::div_x() const {
  assert(!is_zero() && sgn_of(c_[0]) == 0);
  std::vector<Int> r(c_.begin() + 1, c_.end());
  return UPoly(std::move(r));
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (sgn_of(c_[i]) == 0) continue;
    Int a = c_[i];
    if (first) {
      if (sgn_of(a) < 0) os << "-", a = -a;
    } else {
      os << (sgn_of(a) < 0 ? "-" : "+");
      if (sgn_of(a) < 0) a = -a;
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Pseudo-remainder: lc(B)^(degA-degB+1) * A mod B.
UPoly upoly_prem(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  int e = a.degree() - b.degree() + 1;
  const Int& d = b.lc();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::vector<Int> s(r.degree() - b.degree() + 1);
    s.back() = r.lc();
    UPoly sub = UPoly(std::move(s)) * b;
    r = r * d - sub;
    --e;
  }
  if (e > 0) r = r * pow_ui(d, e);
  return r;
}

}  // namespace

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  Int ca = a.content(), cb = b.content();
  UPoly f = a.primitive(), g = b.primitive();
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero()) {
    UPoly r = upoly_prem(f, g).primitive();
    f = g;
    g = r;
  }
  UPoly res = f.primitive();
  Int c = gcd_int(ca, cb);
  if (c != 1) res = res * c;
  return res;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.is_zero() || f.degree() == 0) return f.primitive();
  UPoly g = upoly_gcd(f, f.derivative());
  if (g.degree() == 0) return f.primitive();
  auto q = f.divided_by(g);
  if (!q) {
    // gcd is defined up to sign/content; primitive inputs divide exactly
    q = f.primitive().divided_by(g.primitive());
  }
  return q->primitive();
}

std::vector<UPoly> sturm_chain(const UPoly& f) {
  std::vector<UPoly> chain;
  if (f.is_zero()) return chain;
  UPoly a = f.primitive();
  chain.push_back(a);
  UPoly b = a.derivative();
  while (!b.is_zero()) {
    b = b.primitive_keep_sign();
    chain.push_back(b);
    const UPoly& prev = chain[chain.size() - 2];
    int delta = prev.degree() - b.degree() + 1;
    UPoly r = upoly_prem(prev, b);
    // prem scales by lc(b)^delta; the Sturm step needs -rem up to a
    // positive factor, so flip according to that scale's sign.
    if (sgn_of(b.lc()) > 0 || delta % 2 == 0) r = -r;
    b = std::move(r);
  }
  return chain;
}

int sturm_variations(const std::vector<UPoly>& chain, const Rat& x) {
  int var = 0, last = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

int sturm_count(const UPoly& f, const Rat& a, const Rat& b) {
  UPoly s = squarefree_part(f);
  auto chain = sturm_chain(s);
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

int sturm_count_all(const UPoly& f) {
  Rat b = root_bound(f);
  return sturm_count(f, -b, b);
}

Rat root_bound(const UPoly& f) {
  if (f.is_zero() || f.degree() == 0) return Rat(1);
  Rat m = 0;
  Rat lc = rat_abs(Rat(f.lc()));
  for (int i = 0; i < f.degree(); ++i) {
    Rat a = rat_abs(Rat(f[i])) / lc;
    if (a > m) m = a;
  }
  Rat b = m + 1;
  // round up to a power of two so argument scalings stay integral
  Rat p = 1;
  while (p < b) p *= 2;
  return p;
}

namespace {

int descartes_variations(const UPoly& q) {
  // variations of (1+x)^n q(1/(1+x)): roots of q in (0,1)
  UPoly t = q.reversed().shifted_by_one();
  int var = 0, last = 0;
  for (const auto& c : t.coeffs()) {
    int s = sgn_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

// Roots of q in open (0,1) mapped onto (lo, hi). Invariant: q(0) != 0 and
// q(1) != 0, and `defining` carries the same roots on (lo, hi), so emitted
// interval endpoints are never roots of the root's defining polynomial.
void isolate01(const UPoly& q, const Rat& lo, const Rat& hi,
               std::vector<IsolatedRoot>& out, UPoly defining) {
  int v = descartes_variations(q);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({std::move(defining), lo, hi});
    return;
  }
  Rat mid = rat_mid(lo, hi);
  UPoly left = q.half_arg_scaled();      // roots in (0,1/2) -> (0,1)
  UPoly right = left.shifted_by_one();   // roots in (1/2,1) -> (0,1)
  if (sgn_of(right[0]) == 0) {
    out.push_back({defining, mid, mid});
    right = right.div_x();
    // strip the root from left's endpoint at 1 and from the defining
    // polynomial, so descendants never see it again
    left = *left.divided_by(UPoly({Int(-1), Int(1)}));
    defining = *defining.divided_by(UPoly({Int(-mid.get_num()), Int(mid.get_den())}));
  }
  isolate01(left, lo, mid, out, defining);
  isolate01(right, mid, hi, out, std::move(defining));
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const UPoly& f_in) {
  std::vector<IsolatedRoot> out;
  if (f_in.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  UPoly f = squarefree_part(f_in);
  if (f.degree() <= 0) return out;
  bool zero_root = false;
  if (sgn_of(f[0]) == 0) {
    zero_root = true;
    f = f.div_x();
  }
  Rat b = root_bound(f);
  while (f.sign_at(b) == 0 || f.sign_at(-b) == 0) b *= 2;
  unsigned k = 0;
  {
    Rat t = b;
    while (t > 1) t /= 2, ++k;
  }
  // positive roots: g(x) = f(Bx) on (0,1)
  UPoly gp = f.scale_pow2(k);
  std::vector<IsolatedRoot> pos;
  isolate01(gp, Rat(0), b, pos, f);
  // negative roots via f(-x)
  UPoly fneg(f);
  {
    std::vector<Int> c = f.coeffs();
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    fneg = UPoly(std::move(c));
  }
  UPoly gn = fneg.scale_pow2(k);
  std::vector<IsolatedRoot> negm;
  isolate01(gn, Rat(0), b, negm, fneg);
  for (auto it = negm.rbegin(); it != negm.rend(); ++it) {
    // map the defining polynomial back through x -> -x
    std::vector<Int> c = it->poly.coeffs();
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    out.push_back({UPoly(std::move(c)), -it->hi, -it->lo});
  }
  if (zero_root) out.push_back({UPoly({Int(0), Int(1)}), Rat(0), Rat(0)});
  for (auto& r : pos) out.push_back(std::move(r));
  return out;
}

}  // namespace cad
