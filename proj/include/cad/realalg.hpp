#ifndef CAD_REALALG_HPP
#define CAD_REALALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "cad/poly.hpp"
#include "cad/upoly.hpp"

namespace cad {

// Exact real root: squarefree integer defining polynomial plus an isolating
// interval whose endpoints are not roots; lo == hi encodes a rational.
class RealAlgebraicNumber {
 public:
  RealAlgebraicNumber() : poly_(UPoly({Int(0), Int(1)})), lo_(0), hi_(0) {}
  static RealAlgebraicNumber from_rat(const Rat& q);
  static RealAlgebraicNumber from_root(UPoly sqfree, Rat lo, Rat hi);

  bool is_rational() const { return lo_ == hi_; }
  const Rat& value() const { return lo_; }  // requires is_rational()
  const UPoly& defining_poly() const { return poly_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Rat approx() const { return rat_mid(lo_, hi_); }

  void refine() const;  // halve the isolating interval
  void refine_until_width(const Rat& w) const;
  double to_double() const;
  std::string str() const;

 private:
  mutable UPoly poly_;
  mutable Rat lo_, hi_;
  mutable int sign_lo_ = 0;
};

// Exact order; equality decided via gcd of the defining polynomials.
int compare(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b);
int compare(const RealAlgebraicNumber& a, const Rat& q);

std::vector<RealAlgebraicNumber> isolate_roots(const UPoly& f);

// ---------------------------------------------------------------------------
// Extension towers for nested algebraic sample points.
// ---------------------------------------------------------------------------

// Element of the tower field K_j = K_{j-1}[t_j]/(m_j); level 0 is Q.
struct Alg {
  int level = 0;
  Rat q;               // level == 0
  std::vector<Alg> c;  // level > 0: ascending coefficients, each of lower level

  static Alg rational(Rat v) {
    Alg a;
    a.q = std::move(v);
    return a;
  }
};

// Per-sample tower of simple real extensions.  Minimal polynomials are monic
// and squarefree over the field below; they may shrink (split) when a
// zero-divisor is discovered, which never changes any represented value.
class Tower {
 public:
  using KPoly = std::vector<Alg>;  // ascending coefficients over the tower

  struct Ext {
    KPoly minpoly;  // monic, coefficients of level < this extension's level
    Rat lo, hi;     // isolating interval, endpoints not roots
    int sign_lo;    // sign of minpoly at lo
  };

  int levels() const { return static_cast<int>(exts_.size()); }
  const Ext& ext(int level) const { return exts_[level - 1]; }

  Alg theta(int level) const;

  Alg add(const Alg& a, const Alg& b);
  Alg sub(const Alg& a, const Alg& b);
  Alg mul(const Alg& a, const Alg& b);
  Alg neg(const Alg& a) const;
  Alg invert(const Alg& a);

  bool is_zero(const Alg& a);
  int sign(const Alg& a);
  RatInterval enclose(const Alg& a) const;
  void refine_level(int level);

  // Polynomial helpers; coefficients live strictly below `level` for the
  // minimal-polynomial routines, or at any tower level for lifting where the
  // indeterminate is a fresh variable on top.
  int kdeg(KPoly& f);  // strips exact-zero leading coefficients
  Alg keval(const KPoly& f, const Rat& x);
  int ksign_at(const KPoly& f, const Rat& x);
  KPoly kderive(const KPoly& f);
  KPoly kmul(const KPoly& a, const KPoly& b);
  KPoly kadd(const KPoly& a, const KPoly& b);
  KPoly kmonic(KPoly f);
  KPoly krem(const KPoly& a, const KPoly& b);   // b monic
  KPoly kquot(const KPoly& a, const KPoly& b);  // exact, b monic
  KPoly kgcd(KPoly a, KPoly b);                 // monic
  // Pseudo-remainder of a by b (no inversions); *scale_sign reports the sign
  // of the accumulated leading-coefficient power.
  KPoly kprem(const KPoly& a, const KPoly& b, int* scale_sign);
  KPoly kgcd_scaled(KPoly a, KPoly b);          // gcd up to a nonzero scalar
  KPoly ksquarefree(KPoly f);                   // monic squarefree part

  // Isolating intervals for all distinct real roots of monic squarefree f.
  std::vector<std::pair<Rat, Rat>> isolate(const KPoly& f);

  int push_ext(KPoly monic_sqfree, Rat lo, Rat hi);
  void truncate(int levels);

 private:
  Alg reduce(Alg a);
  std::vector<Ext> exts_;
};

// One root of a polynomial lifted over a sample point.
struct LiftedRoot {
  bool is_rational = false;
  Rat value;          // when rational
  Tower::KPoly poly;  // monic squarefree over the sample's tower
  Rat lo, hi;
  int sign_lo = 0;

  Rat approx() const { return is_rational ? value : rat_mid(lo, hi); }
};

void refine_root(Tower& tw, LiftedRoot& r);
int compare_roots(Tower& tw, LiftedRoot& a, LiftedRoot& b);
int compare_root_rat(Tower& tw, LiftedRoot& a, const Rat& q);

// Sample point of a cell: rational coordinates stored exactly, algebraic
// ones as tower extensions in coordinate order.
class SamplePoint {
 public:
  struct Coord {
    bool is_rat;
    Rat q;      // when rational
    int level;  // tower extension index otherwise (1-based)
  };

  SamplePoint() = default;

  size_t size() const { return coords_.size(); }
  bool all_rational() const;
  std::vector<Rat> rationals() const;  // requires all_rational()
  const Coord& coord(size_t i) const { return coords_[i]; }
  Tower& tower() { return tower_; }
  const Tower& tower() const { return tower_; }

  SamplePoint extended_with_rational(const Rat& q) const;
  SamplePoint extended_with_root(const LiftedRoot& r) const;
  SamplePoint prefix(size_t k) const;

  Alg coord_alg(size_t i) const;
  LiftedRoot coord_as_root(size_t i) const;
  RealAlgebraicNumber coord_ran(size_t i) const;  // requires level-1 style coord
  std::string coord_str(size_t i) const;
  double coord_double(size_t i) const;

 private:
  Tower tower_;
  std::vector<Coord> coords_;
};

// Exact sign of f at p; f's variables must lie within the first p.size()
// variables of the order.
int sign_at(const Polynomial& f, const SamplePoint& p);

struct LiftResult {
  bool nullified = false;
  std::vector<LiftedRoot> roots;  // strictly increasing
};

// Real roots in variable v of f specialized at p (p covers the variables
// below v).  Reports nullification instead of roots when the specialization
// vanishes identically.
LiftResult roots_over_point(const Polynomial& f, const SamplePoint& p, size_t v);

// Specialization of f at p leaving v free, as a tower polynomial.
Tower::KPoly specialize_over(const Polynomial& f, SamplePoint& p, size_t v);

}  // namespace cad

#endif
