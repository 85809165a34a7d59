#ifndef CAD_UPOLY_HPP
#define CAD_UPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cad/numeric.hpp"

namespace cad {

// Dense univariate polynomial with integer coefficients, little-endian.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(Int v) { return UPoly(std::vector<Int>{std::move(v)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& operator[](size_t i) const { return c_[i]; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& lc() const { return c_.back(); }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Int& k) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  UPoly derivative() const;
  Int content() const;              // nonnegative gcd of coefficients
  UPoly primitive() const;          // divided by +/- content so that lc > 0
  UPoly primitive_keep_sign() const;  // divided by +content only

  Int eval_int(const Int& x) const;
  Rat eval_rat(const Rat& x) const;
  // Sign of f(p/q) computed integrally, q > 0.
  int sign_at(const Rat& x) const;

  // q^deg * f(p/q): integer polynomial values along one substitution.
  Int eval_homog(const Int& p, const Int& q) const;

  UPoly shifted_by_one() const;  // f(x+1)
  UPoly reversed() const;        // x^deg * f(1/x)
  UPoly scale_pow2(unsigned k) const;         // f(2^k x)
  UPoly half_arg_scaled() const;              // 2^deg * f(x/2)
  std::optional<UPoly> divided_by(const UPoly& g) const;  // exact division
  UPoly div_x() const;           // f/x, requires f(0) == 0

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Int> c_;
};

UPoly upoly_gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& f);

// Sturm-sequence root counting, used as an independent oracle.
std::vector<UPoly> sturm_chain(const UPoly& f);
int sturm_variations(const std::vector<UPoly>& chain, const Rat& x);
// Number of distinct real roots in (a, b]; requires f(a) != 0.
int sturm_count(const UPoly& f, const Rat& a, const Rat& b);
int sturm_count_all(const UPoly& f);

// Power-of-two bound B with all real roots of f in (-B, B).
Rat root_bound(const UPoly& f);

struct IsolatedRoot {
  UPoly poly;  // squarefree, positive leading coefficient
  Rat lo, hi;  // isolating interval; lo == hi means the root is rational
  bool exact() const { return lo == hi; }
};

// All distinct real roots, strictly increasing, pairwise disjoint intervals.
// Interval endpoints are never roots unless the interval is a point.
std::vector<IsolatedRoot> isolate_real_roots(const UPoly& f);

}  // namespace cad

#endif
