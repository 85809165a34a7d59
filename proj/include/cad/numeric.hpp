#ifndef CAD_NUMERIC_HPP
#define CAD_NUMERIC_HPP

#include <gmpxx.h>
#include <string>

namespace cad {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn_of(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sgn_of(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int pow_ui(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Rat rat_mid(const Rat& a, const Rat& b) { return (a + b) / 2; }

inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Closed rational interval with outward arithmetic; exact endpoints.
struct RatInterval {
  Rat lo, hi;

  RatInterval() = default;
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit RatInterval(const Rat& q) : lo(q), hi(q) {}

  bool contains_zero() const { return sgn_of(lo) <= 0 && sgn_of(hi) >= 0; }
  Rat width() const { return hi - lo; }

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }

  RatInterval operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = a, mx = a;
    for (const Rat* p : {&b, &c, &d}) {
      if (*p < mn) mn = *p;
      if (*p > mx) mx = *p;
    }
    return {mn, mx};
  }

  // Sign of every point in the interval, or 0 when it straddles/contains zero.
  int definite_sign() const {
    if (sgn_of(lo) > 0) return 1;
    if (sgn_of(hi) < 0) return -1;
    return 0;
  }
};

}  // namespace cad

#endif
