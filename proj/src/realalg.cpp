#include "cad/realalg.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace cad {

// ---------------------------------------------------------------------------
// RealAlgebraicNumber over Q
// ---------------------------------------------------------------------------

RealAlgebraicNumber RealAlgebraicNumber::from_rat(const Rat& q) {
  RealAlgebraicNumber r;
  r.poly_ = UPoly({Int(-q.get_num()), Int(q.get_den())});
  r.lo_ = q;
  r.hi_ = q;
  r.sign_lo_ = 0;
  return r;
}

RealAlgebraicNumber RealAlgebraicNumber::from_root(UPoly sqfree, Rat lo, Rat hi) {
  RealAlgebraicNumber r;
  r.poly_ = std::move(sqfree);
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  r.sign_lo_ = r.lo_ == r.hi_ ? 0 : r.poly_.sign_at(r.lo_);
  return r;
}

void RealAlgebraicNumber::refine() const {
  if (is_rational()) return;
  Rat m = rat_mid(lo_, hi_);
  int s = poly_.sign_at(m);
  if (s == 0) {
    lo_ = m;
    hi_ = m;
    sign_lo_ = 0;
    return;
  }
  if (s == sign_lo_)
    lo_ = m;
  else
    hi_ = m;
}

void RealAlgebraicNumber::refine_until_width(const Rat& w) const {
  while (!is_rational() && hi_ - lo_ > w) refine();
}

double RealAlgebraicNumber::to_double() const {
  refine_until_width(Rat(1, Int("1099511627776")));  // 2^-40
  return rat_mid(lo_, hi_).get_d();
}

std::string RealAlgebraicNumber::str() const {
  if (is_rational()) return lo_.get_str();
  std::ostringstream os;
  os << "root(" << poly_.str() << " in (" << lo_.get_str() << ", " << hi_.get_str() << "))";
  return os.str();
}

int compare(const RealAlgebraicNumber& a, const Rat& q) {
  if (a.is_rational()) return ::cmp(a.value(), q) < 0 ? -1 : (a.value() == q ? 0 : 1);
  while (true) {
    if (q <= a.lo()) return 1;
    if (q >= a.hi()) return -1;
    int s = a.defining_poly().sign_at(q);
    if (s == 0) return 0;
    // root lies on the side of q where the sign still changes
    return s == a.defining_poly().sign_at(a.lo()) ? 1 : -1;
  }
}

int compare(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) {
    if (a.value() == b.value()) return 0;
    return a.value() < b.value() ? -1 : 1;
  }
  if (a.is_rational()) return -compare(b, a.value());
  if (b.is_rational()) return compare(a, b.value());
  UPoly g = upoly_gcd(a.defining_poly(), b.defining_poly());
  bool common = g.degree() >= 1;
  while (true) {
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    if (common) {
      Rat lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
      if (g.sign_at(lo) * g.sign_at(hi) < 0) return 0;
    }
    a.refine();
    b.refine();
  }
}

std::vector<RealAlgebraicNumber> isolate_roots(const UPoly& f) {
  std::vector<RealAlgebraicNumber> out;
  for (auto& r : isolate_real_roots(f)) {
    if (r.exact())
      out.push_back(RealAlgebraicNumber::from_rat(r.lo));
    else
      out.push_back(RealAlgebraicNumber::from_root(std::move(r.poly), std::move(r.lo), std::move(r.hi)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tower arithmetic
// ---------------------------------------------------------------------------

namespace {

bool structural_zero(const Alg& a) {
  if (a.level == 0) return sgn_of(a.q) == 0;
  for (const auto& c : a.c)
    if (!structural_zero(c)) return false;
  return true;
}

Alg lift_to(const Alg& a, int level) {
  Alg r = a;
  while (r.level < level) {
    Alg up;
    up.level = r.level + 1;
    up.c.push_back(std::move(r));
    r = std::move(up);
  }
  return r;
}

// Strip structurally-zero top coefficients and unwrap degree-0 layers.
Alg tidy(Alg a) {
  if (a.level == 0) return a;
  while (!a.c.empty() && structural_zero(a.c.back())) a.c.pop_back();
  if (a.c.empty()) return Alg::rational(Rat(0));
  if (a.c.size() == 1) return tidy(std::move(a.c[0]));
  for (auto& k : a.c) k = tidy(std::move(k));
  return a;
}

const Alg kOne = Alg::rational(Rat(1));

}  // namespace

Alg Tower::theta(int level) const {
  Alg a;
  a.level = level;
  a.c.push_back(Alg::rational(Rat(0)));
  a.c.push_back(Alg::rational(Rat(1)));
  return a;
}

Alg Tower::add(const Alg& a, const Alg& b) {
  if (a.level == 0 && b.level == 0) return Alg::rational(a.q + b.q);
  int L = std::max(a.level, b.level);
  Alg x = lift_to(a, L), y = lift_to(b, L);
  Alg r;
  r.level = L;
  size_t n = std::max(x.c.size(), y.c.size());
  for (size_t i = 0; i < n; ++i) {
    if (i < x.c.size() && i < y.c.size())
      r.c.push_back(add(x.c[i], y.c[i]));
    else
      r.c.push_back(i < x.c.size() ? x.c[i] : y.c[i]);
  }
  return tidy(std::move(r));
}

Alg Tower::neg(const Alg& a) const {
  if (a.level == 0) return Alg::rational(-a.q);
  Alg r = a;
  for (auto& k : r.c) k = neg(k);
  return r;
}

Alg Tower::sub(const Alg& a, const Alg& b) { return add(a, neg(b)); }

Alg Tower::reduce(Alg a) {
  if (a.level == 0) return a;
  const KPoly& m = exts_[a.level - 1].minpoly;
  size_t dm = m.size() - 1;  // monic, degree dm
  while (a.c.size() > dm) {
    Alg top = std::move(a.c.back());
    a.c.pop_back();
    if (structural_zero(top)) continue;
    size_t shift = a.c.size() - dm;
    for (size_t i = 0; i < dm; ++i) {
      Alg t = mul(top, m[i]);
      a.c[shift + i] = sub(a.c[shift + i], t);
    }
  }
  return tidy(std::move(a));
}

Alg Tower::mul(const Alg& a, const Alg& b) {
  if (a.level == 0 && b.level == 0) return Alg::rational(a.q * b.q);
  if (a.level == 0) {
    if (sgn_of(a.q) == 0) return Alg::rational(Rat(0));
    Alg r = b;
    for (auto& k : r.c) k = mul(a, k);
    return tidy(std::move(r));
  }
  if (b.level == 0) return mul(b, a);
  int L = std::max(a.level, b.level);
  Alg x = lift_to(a, L), y = lift_to(b, L);
  Alg r;
  r.level = L;
  r.c.assign(x.c.size() + y.c.size() - 1, Alg::rational(Rat(0)));
  for (size_t i = 0; i < x.c.size(); ++i)
    for (size_t j = 0; j < y.c.size(); ++j) r.c[i + j] = add(r.c[i + j], mul(x.c[i], y.c[j]));
  return reduce(std::move(r));
}

RatInterval Tower::enclose(const Alg& a) const {
  if (a.level == 0) return RatInterval(a.q);
  const Ext& e = exts_[a.level - 1];
  RatInterval theta(e.lo, e.hi);
  RatInterval acc(Rat(0));
  for (size_t i = a.c.size(); i-- > 0;) acc = acc * theta + enclose(a.c[i]);
  return acc;
}

void Tower::refine_level(int level) {
  Ext& e = exts_[level - 1];
  if (e.lo == e.hi) return;
  Rat m = rat_mid(e.lo, e.hi);
  int s = ksign_at(e.minpoly, m);
  if (s == 0) {
    // the coordinate is exactly rational; pin the extension down
    Rat w = (e.hi - e.lo) / 4;
    e.minpoly = {Alg::rational(-m), Alg::rational(Rat(1))};
    e.lo = m - w;
    e.hi = m + w;
    e.sign_lo = -1;
    return;
  }
  if (s == e.sign_lo)
    e.lo = m;
  else
    e.hi = m;
}

bool Tower::is_zero(const Alg& a_in) {
  Alg a = tidy(a_in);
  if (a.level == 0) return sgn_of(a.q) == 0;
  // cheap certificate of nonzeroness first
  for (int round = 0; round < 4; ++round) {
    if (!enclose(a).contains_zero()) return false;
    for (int l = 1; l <= a.level; ++l) refine_level(l);
  }
  if (!enclose(a).contains_zero()) return false;
  bool all = true;
  for (const auto& k : a.c)
    if (!is_zero(k)) {
      all = false;
      break;
    }
  if (all) return true;
  // a is a nonzero residue; it vanishes at theta iff gcd(m, a) does
  int L = a.level;
  KPoly ap(a.c.begin(), a.c.end());
  KPoly g = kgcd_scaled(exts_[L - 1].minpoly, ap);
  if (static_cast<int>(g.size()) - 1 == 0) return false;
  Ext& e = exts_[L - 1];
  int slo = ksign_at(g, e.lo), shi = ksign_at(g, e.hi);
  if (slo * shi < 0) {
    // theta is the common root; the residue vanishes
    return true;
  }
  // shrink away the conjugates carried by g
  KPoly m2 = kquot(e.minpoly, kmonic(std::move(g)));
  e.minpoly = std::move(m2);
  e.sign_lo = ksign_at(e.minpoly, e.lo);
  return false;
}

int Tower::sign(const Alg& a_in) {
  Alg a = tidy(a_in);
  if (a.level == 0) return sgn_of(a.q);
  const int kStallRounds = 64;
  for (int round = 0;; ++round) {
    RatInterval i = enclose(a);
    int s = i.definite_sign();
    if (s != 0) return s;
    if (round == kStallRounds && is_zero(a)) return 0;
    for (int l = 1; l <= a.level; ++l) refine_level(l);
    if (round > 100000) throw std::runtime_error("Tower::sign: refinement failed to converge");
  }
}

Alg Tower::invert(const Alg& a_in) {
  Alg a = tidy(a_in);
  if (a.level == 0) {
    if (sgn_of(a.q) == 0) throw std::domain_error("Tower::invert: zero");
    return Alg::rational(1 / a.q);
  }
  int L = a.level;
  while (true) {
    Ext& e = exts_[L - 1];
    // extended Euclid: track v with v*a == r (mod m)
    KPoly r0 = e.minpoly;
    KPoly r1(a.c.begin(), a.c.end());
    KPoly v0, v1{kOne};
    while (true) {
      int d1 = kdeg(r1);
      if (d1 < 0) break;
      if (d1 == 0 && !is_zero(r1[0])) break;
      if (d1 == 0) {
        r1.clear();
        break;
      }
      Alg inv_lc = invert(r1.back());
      KPoly r1m = r1;
      for (auto& k : r1m) k = mul(k, inv_lc);
      r1m.back() = kOne;
      KPoly q;  // quotient of r0 by r1m
      KPoly rem = r0;
      int db = static_cast<int>(r1m.size()) - 1;
      int dr = kdeg(rem);
      if (dr >= db) {
        q.assign(dr - db + 1, Alg::rational(Rat(0)));
        while ((dr = kdeg(rem)) >= db) {
          Alg c = rem.back();
          q[dr - db] = c;
          for (int i = 0; i <= db; ++i) rem[dr - db + i] = sub(rem[dr - db + i], mul(c, r1m[i]));
          rem.pop_back();
        }
      }
      // account for the monic scaling: r0 = (q*inv_lc)*r1 + rem
      for (auto& k : q) k = mul(k, inv_lc);
      KPoly nv = v0;
      KPoly qv = kmul(q, v1);
      nv.resize(std::max(nv.size(), qv.size()), Alg::rational(Rat(0)));
      for (size_t i = 0; i < qv.size(); ++i) nv[i] = sub(i < nv.size() ? nv[i] : Alg::rational(Rat(0)), qv[i]);
      r0 = std::move(r1);
      r1 = std::move(rem);
      v0 = std::move(v1);
      v1 = std::move(nv);
    }
    if (!r1.empty()) {
      // gcd is the nonzero constant r1[0]: inverse = v1 / r1[0]
      Alg inv_c = invert(r1[0]);
      Alg res = Alg::rational(Rat(0));
      for (size_t i = v1.size(); i-- > 0;) {
        res = add(mul(res, theta(L)), mul(v1[i], inv_c));
      }
      return tidy(std::move(res));
    }
    // zero divisor: split the extension and retry
    KPoly g = kmonic(r0);
    int slo = ksign_at(g, e.lo), shi = ksign_at(g, e.hi);
    if (slo * shi < 0) throw std::domain_error("Tower::invert: element is zero at theta");
    e.minpoly = kquot(e.minpoly, g);
    e.sign_lo = ksign_at(e.minpoly, e.lo);
    a = reduce(std::move(a));
    if (a.level < L) {
      // reduction may collapse below; handle recursively
      return invert(a);
    }
  }
}

int Tower::kdeg(KPoly& f) {
  while (!f.empty() && is_zero(f.back())) f.pop_back();
  return static_cast<int>(f.size()) - 1;
}

Alg Tower::keval(const KPoly& f, const Rat& x) {
  Alg acc = Alg::rational(Rat(0));
  Alg xa = Alg::rational(x);
  for (size_t i = f.size(); i-- > 0;) acc = add(mul(acc, xa), f[i]);
  return acc;
}

int Tower::ksign_at(const KPoly& f, const Rat& x) { return sign(keval(f, x)); }

Tower::KPoly Tower::kderive(const KPoly& f) {
  KPoly r;
  for (size_t i = 1; i < f.size(); ++i)
    r.push_back(mul(f[i], Alg::rational(Rat(static_cast<long>(i)))));
  return r;
}

Tower::KPoly Tower::kmul(const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1, Alg::rational(Rat(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  return r;
}

Tower::KPoly Tower::kadd(const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()), Alg::rational(Rat(0)));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = add(r[i], a[i]);
    if (i < b.size()) r[i] = add(r[i], b[i]);
  }
  return r;
}

Tower::KPoly Tower::kmonic(KPoly f) {
  if (kdeg(f) < 0) return f;
  if (f.size() == 1) return {kOne};
  Alg inv = invert(f.back());
  for (auto& k : f) k = mul(k, inv);
  f.back() = kOne;
  return f;
}

Tower::KPoly Tower::krem(const KPoly& a, const KPoly& b) {
  KPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  int dr;
  while ((dr = kdeg(r)) >= db && dr >= 0) {
    Alg c = r.back();
    for (int i = 0; i < db; ++i) r[dr - db + i] = sub(r[dr - db + i], mul(c, b[i]));
    r.pop_back();
  }
  return r;
}

Tower::KPoly Tower::kquot(const KPoly& a, const KPoly& b) {
  KPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  int dr = kdeg(r);
  if (dr < db) return {};
  KPoly q(dr - db + 1, Alg::rational(Rat(0)));
  while ((dr = kdeg(r)) >= db && dr >= 0) {
    Alg c = r.back();
    q[dr - db] = c;
    for (int i = 0; i < db; ++i) r[dr - db + i] = sub(r[dr - db + i], mul(c, b[i]));
    r.pop_back();
  }
  return q;
}

Tower::KPoly Tower::kgcd(KPoly a, KPoly b) {
  int da = kdeg(a), db = kdeg(b);
  if (da < 0) return kmonic(std::move(b));
  if (db < 0) return kmonic(std::move(a));
  if (da < db) std::swap(a, b);
  while (true) {
    db = kdeg(b);
    if (db < 0) return kmonic(std::move(a));
    if (db == 0) return {kOne};
    b = kmonic(std::move(b));
    KPoly r = krem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
}

Tower::KPoly Tower::kprem(const KPoly& a, const KPoly& b, int* scale_sign) {
  KPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  const Alg& lcb = b.back();
  int steps = 0;
  int dr;
  while ((dr = kdeg(r)) >= db && dr >= 0) {
    Alg c = r.back();
    r.pop_back();
    for (auto& k : r) k = mul(k, lcb);
    for (int i = 0; i < db; ++i) r[dr - db + i] = sub(r[dr - db + i], mul(c, b[i]));
    ++steps;
  }
  if (scale_sign) {
    if (steps % 2 == 0)
      *scale_sign = 1;
    else
      *scale_sign = sign(lcb);
  }
  return r;
}

Tower::KPoly Tower::kgcd_scaled(KPoly a, KPoly b) {
  int da = kdeg(a), db = kdeg(b);
  if (da < 0) return b;
  if (db < 0) return a;
  if (da < db) std::swap(a, b);
  while (true) {
    db = kdeg(b);
    if (db < 0) return a;
    if (db == 0) return b;
    KPoly r = kprem(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
}

Tower::KPoly Tower::ksquarefree(KPoly f) {
  int deg = kdeg(f);
  if (deg <= 1) return kmonic(std::move(f));
  if (deg == 2) {
    // squarefree unless the discriminant vanishes
    Alg disc = sub(mul(f[1], f[1]), mul(mul(f[0], f[2]), Alg::rational(Rat(4))));
    if (sign(disc) != 0) return kmonic(std::move(f));
    return kmonic(kderive(f));  // the double root
  }
  KPoly d = kderive(f);
  KPoly g = kgcd_scaled(f, d);
  if (static_cast<int>(g.size()) - 1 == 0) return kmonic(std::move(f));
  return kmonic(kquot(kmonic(std::move(f)), kmonic(std::move(g))));
}

namespace {

int variations(const std::vector<int>& signs) {
  int var = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

}  // namespace

std::vector<std::pair<Rat, Rat>> Tower::isolate(const KPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  KPoly fs = f;
  int deg = kdeg(fs);
  if (deg <= 0) return out;
  // Sturm chain via pseudo-remainders; the positive-scale correction keeps
  // the classical sign pattern without field inversions
  std::vector<KPoly> chain;
  chain.push_back(fs);
  chain.push_back(kderive(fs));
  while (true) {
    KPoly& last = chain.back();
    if (kdeg(last) < 0) {
      chain.pop_back();
      break;
    }
    if (kdeg(last) == 0) break;
    int scale_sign = 1;
    KPoly r = kprem(chain[chain.size() - 2], last, &scale_sign);
    if (scale_sign > 0)
      for (auto& k : r) k = neg(k);
    chain.push_back(std::move(r));
  }
  auto vars_at = [&](const Rat& x) {
    std::vector<int> ss;
    for (auto& p : chain) ss.push_back(ksign_at(p, x));
    return variations(ss);
  };
  // root bound from coefficient enclosures (f monic)
  Rat bound = 1;
  for (size_t i = 0; i + 1 < fs.size(); ++i) {
    RatInterval e = enclose(fs[i]);
    Rat m = std::max(rat_abs(e.lo), rat_abs(e.hi));
    if (m > bound - 1) bound = m + 1;
  }
  while (ksign_at(fs, bound) == 0 || ksign_at(fs, -bound) == 0) bound *= 2;
  // non-root split point inside (a, b)
  auto split_point = [&](const Rat& a, const Rat& b) {
    Rat m = rat_mid(a, b);
    long den = 3;
    while (ksign_at(fs, m) == 0) {
      m = a + (b - a) / den;
      den += 2;
    }
    return m;
  };
  struct Job {
    Rat a, b;
    int va, vb;
  };
  std::vector<Job> stack{{-bound, bound, vars_at(-bound), vars_at(bound)}};
  std::vector<std::pair<Rat, Rat>> found;
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    int n = j.va - j.vb;
    if (n <= 0) continue;
    if (n == 1) {
      found.push_back({j.a, j.b});
      continue;
    }
    Rat m = split_point(j.a, j.b);
    int vm = vars_at(m);
    stack.push_back({j.a, m, j.va, vm});
    stack.push_back({m, j.b, vm, j.vb});
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return found;
}

int Tower::push_ext(KPoly monic_sqfree, Rat lo, Rat hi) {
  Ext e;
  e.minpoly = std::move(monic_sqfree);
  e.lo = std::move(lo);
  e.hi = std::move(hi);
  e.sign_lo = ksign_at(e.minpoly, e.lo);
  exts_.push_back(std::move(e));
  return levels();
}

void Tower::truncate(int levels) { exts_.resize(levels); }

// ---------------------------------------------------------------------------
// LiftedRoot
// ---------------------------------------------------------------------------

void refine_root(Tower& tw, LiftedRoot& r) {
  if (r.is_rational) return;
  Rat m = rat_mid(r.lo, r.hi);
  int s = tw.ksign_at(r.poly, m);
  if (s == 0) {
    r.is_rational = true;
    r.value = m;
    return;
  }
  if (s == r.sign_lo)
    r.lo = m;
  else
    r.hi = m;
}

int compare_root_rat(Tower& tw, LiftedRoot& a, const Rat& q) {
  if (a.is_rational) return a.value == q ? 0 : (a.value < q ? -1 : 1);
  if (q <= a.lo) return 1;
  if (q >= a.hi) return -1;
  int s = tw.ksign_at(a.poly, q);
  if (s == 0) {
    a.is_rational = true;
    a.value = q;
    return 0;
  }
  return s == a.sign_lo ? 1 : -1;
}

int compare_roots(Tower& tw, LiftedRoot& a, LiftedRoot& b) {
  if (a.is_rational) return -compare_root_rat(tw, b, a.value);
  if (b.is_rational) return compare_root_rat(tw, a, b.value);
  Tower::KPoly g = tw.kgcd_scaled(a.poly, b.poly);
  bool common = static_cast<int>(g.size()) - 1 >= 1;
  while (true) {
    if (a.is_rational || b.is_rational) return compare_roots(tw, a, b);
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    if (common) {
      Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
      if (tw.ksign_at(g, lo) * tw.ksign_at(g, hi) < 0) return 0;
    }
    refine_root(tw, a);
    refine_root(tw, b);
  }
}

// ---------------------------------------------------------------------------
// SamplePoint
// ---------------------------------------------------------------------------

bool SamplePoint::all_rational() const {
  for (const auto& c : coords_)
    if (!c.is_rat) return false;
  return true;
}

std::vector<Rat> SamplePoint::rationals() const {
  std::vector<Rat> out;
  for (const auto& c : coords_) out.push_back(c.q);
  return out;
}

SamplePoint SamplePoint::extended_with_rational(const Rat& q) const {
  SamplePoint r = *this;
  r.coords_.push_back({true, q, 0});
  return r;
}

SamplePoint SamplePoint::extended_with_root(const LiftedRoot& root) const {
  SamplePoint r = *this;
  if (root.is_rational) {
    r.coords_.push_back({true, root.value, 0});
    return r;
  }
  int level = r.tower_.push_ext(root.poly, root.lo, root.hi);
  r.coords_.push_back({false, Rat(0), level});
  return r;
}

SamplePoint SamplePoint::prefix(size_t k) const {
  SamplePoint r;
  int exts = 0;
  for (size_t i = 0; i < k; ++i)
    if (!coords_[i].is_rat) ++exts;
  r.tower_ = tower_;
  r.tower_.truncate(exts);
  r.coords_.assign(coords_.begin(), coords_.begin() + k);
  return r;
}

Alg SamplePoint::coord_alg(size_t i) const {
  const Coord& c = coords_[i];
  if (c.is_rat) return Alg::rational(c.q);
  return tower_.theta(c.level);
}

LiftedRoot SamplePoint::coord_as_root(size_t i) const {
  const Coord& c = coords_[i];
  LiftedRoot r;
  if (c.is_rat) {
    r.is_rational = true;
    r.value = c.q;
    return r;
  }
  const Tower::Ext& e = tower_.ext(c.level);
  r.poly = e.minpoly;
  r.lo = e.lo;
  r.hi = e.hi;
  r.sign_lo = e.sign_lo;
  return r;
}

namespace {

bool kpoly_rational(const Tower::KPoly& p) {
  for (const auto& a : p)
    if (a.level != 0) return false;
  return true;
}

UPoly kpoly_to_upoly(const Tower::KPoly& p) {
  // clear rational denominators with a positive factor
  Int den = 1;
  for (const auto& a : p) den = den / gcd_int(den, a.q.get_den()) * a.q.get_den();
  std::vector<Int> c;
  for (const auto& a : p) c.push_back(Int(a.q.get_num() * (den / a.q.get_den())));
  return UPoly(std::move(c));
}

}  // namespace

RealAlgebraicNumber SamplePoint::coord_ran(size_t i) const {
  const Coord& c = coords_[i];
  if (c.is_rat) return RealAlgebraicNumber::from_rat(c.q);
  const Tower::Ext& e = tower_.ext(c.level);
  if (!kpoly_rational(e.minpoly))
    throw std::invalid_argument("coord_ran: coordinate is defined over a nested extension");
  return RealAlgebraicNumber::from_root(kpoly_to_upoly(e.minpoly), e.lo, e.hi);
}

std::string SamplePoint::coord_str(size_t i) const {
  const Coord& c = coords_[i];
  if (c.is_rat) return c.q.get_str();
  const Tower::Ext& e = tower_.ext(c.level);
  std::ostringstream os;
  if (kpoly_rational(e.minpoly))
    os << "root(" << kpoly_to_upoly(e.minpoly).str() << " in (" << e.lo.get_str() << ", " << e.hi.get_str() << "))";
  else
    os << "root(level-" << c.level << " extension in (" << e.lo.get_str() << ", " << e.hi.get_str() << "))";
  return os.str();
}

double SamplePoint::coord_double(size_t i) const {
  const Coord& c = coords_[i];
  if (c.is_rat) return c.q.get_d();
  const Tower::Ext& e = tower_.ext(c.level);
  return rat_mid(e.lo, e.hi).get_d();
}

// ---------------------------------------------------------------------------
// Evaluation and lifting over sample points
// ---------------------------------------------------------------------------

namespace {

Alg eval_alg(Tower& tw, const Polynomial& f, const std::vector<Alg>& coords) {
  // per-variable power tables
  std::vector<std::vector<Alg>> pows(coords.size());
  for (size_t v = 0; v < coords.size(); ++v) {
    int d = f.degree(v);
    if (d <= 0) continue;
    pows[v].resize(d + 1, Alg::rational(Rat(1)));
    for (int k = 1; k <= d; ++k) pows[v][k] = tw.mul(pows[v][k - 1], coords[v]);
  }
  Alg acc = Alg::rational(Rat(0));
  for (const auto& [e, c] : f.terms()) {
    Alg t = Alg::rational(Rat(c));
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v >= coords.size()) throw std::invalid_argument("eval_alg: variable beyond sample point");
      t = tw.mul(t, pows[v][e[v]]);
    }
    acc = tw.add(acc, t);
  }
  return acc;
}

}  // namespace

int sign_at(const Polynomial& f, const SamplePoint& p) {
  for (size_t v : f.vars_used())
    if (v >= p.size()) throw std::invalid_argument("sign_at: sample point does not cover " + f.order()->name(v));
  if (p.all_rational()) {
    std::vector<Rat> pt = p.rationals();
    pt.resize(f.nvars(), Rat(0));
    return sgn_of(f.eval(pt));
  }
  SamplePoint& mp = const_cast<SamplePoint&>(p);
  std::vector<Alg> coords;
  for (size_t i = 0; i < p.size(); ++i) coords.push_back(p.coord_alg(i));
  Alg v = eval_alg(mp.tower(), f, coords);
  return mp.tower().sign(v);
}

Tower::KPoly specialize_over(const Polynomial& f, SamplePoint& p, size_t v) {
  std::vector<Alg> coords;
  for (size_t i = 0; i < p.size(); ++i) coords.push_back(p.coord_alg(i));
  int d = f.degree(v);
  Tower::KPoly out(std::max(d, 0) + 1, Alg::rational(Rat(0)));
  for (auto& [k, cf] : f.coeffs_in(v)) out[k] = eval_alg(p.tower(), cf, coords);
  return out;
}

LiftResult roots_over_point(const Polynomial& f, const SamplePoint& p, size_t v) {
  LiftResult res;
  for (size_t u : f.vars_used())
    if (u != v && u >= p.size())
      throw std::invalid_argument("roots_over_point: sample point does not cover " + f.order()->name(u));
  if (p.all_rational()) {
    Polynomial s = f;
    std::vector<Rat> pt = p.rationals();
    for (size_t i = 0; i < pt.size(); ++i) {
      if (i == v) continue;
      s = s.specialize(i, pt[i]);
    }
    UPoly u = s.to_upoly(v);
    if (u.is_zero()) {
      res.nullified = true;
      return res;
    }
    if (u.degree() == 0) return res;
    UPoly sf = squarefree_part(u);
    for (auto& root : isolate_real_roots(sf)) {
      LiftedRoot lr;
      if (root.exact()) {
        lr.is_rational = true;
        lr.value = root.lo;
      } else {
        // the root's own defining polynomial as a monic rational tower
        // polynomial; its interval invariants carry over unchanged
        const UPoly& dp = root.poly;
        Rat lead(dp.lc());
        for (const auto& ci : dp.coeffs()) lr.poly.push_back(Alg::rational(Rat(ci) / lead));
        lr.poly.back() = Alg::rational(Rat(1));
        lr.lo = root.lo;
        lr.hi = root.hi;
        lr.sign_lo = dp.sign_at(root.lo) * sgn_of(dp.lc());
      }
      res.roots.push_back(std::move(lr));
    }
    return res;
  }
  SamplePoint& mp = const_cast<SamplePoint&>(p);
  Tower& tw = mp.tower();
  Tower::KPoly g = specialize_over(f, mp, v);
  int d = tw.kdeg(g);
  if (d < 0) {
    res.nullified = true;
    return res;
  }
  if (d == 0) return res;
  Tower::KPoly sf = tw.ksquarefree(std::move(g));
  for (auto& [lo, hi] : tw.isolate(sf)) {
    LiftedRoot lr;
    lr.poly = sf;
    lr.lo = lo;
    lr.hi = hi;
    lr.sign_lo = tw.ksign_at(sf, lo);
    res.roots.push_back(std::move(lr));
  }
  return res;
}

}  // namespace cad
