#ifndef CAD_POLY_HPP
#define CAD_POLY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cad/numeric.hpp"
#include "cad/upoly.hpp"

namespace cad {

// Ascending variable ordering: index 0 is the lowest variable x1, the last
// index the highest xn (projected first).
class VarOrder {
 public:
  explicit VarOrder(std::vector<std::string> names);
  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<size_t> index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

using VarOrderPtr = std::shared_ptr<const VarOrder>;

using Expo = std::vector<unsigned>;

// Sparse multivariate polynomial over Z under a fixed variable ordering.
// Terms are kept sorted in descending lex order (highest variable most
// significant), so equal polynomials have identical representations.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarOrderPtr ord) : ord_(std::move(ord)) {}
  Polynomial(VarOrderPtr ord, std::vector<std::pair<Expo, Int>> terms);

  static Polynomial constant(VarOrderPtr ord, Int v);
  static Polynomial variable(VarOrderPtr ord, size_t idx);
  static Polynomial monomial(VarOrderPtr ord, Expo e, Int c);

  const VarOrderPtr& order() const { return ord_; }
  size_t nvars() const { return ord_ ? ord_->size() : 0; }
  const std::vector<std::pair<Expo, Int>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int const_value() const;  // requires is_constant()

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Int& k) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial pow(unsigned e) const;
  std::optional<Polynomial> divided_by(const Polynomial& g) const;

  int degree(size_t v) const;   // -1 for the zero polynomial
  int total_degree() const;
  std::optional<size_t> mvar() const;
  bool uses_var(size_t v) const { return degree(v) > 0; }
  std::vector<size_t> vars_used() const;

  Polynomial derivative(size_t v) const;

  // Nonzero coefficients of this as a polynomial in v, descending degree.
  std::vector<std::pair<unsigned, Polynomial>> coeffs_in(size_t v) const;
  Polynomial coeff_of(size_t v, unsigned k) const;
  Polynomial ldcf(size_t v) const;

  // Integer-scaled specialization: den^deg_v(f) * f|_{v = q}. The positive
  // scale keeps coefficients integral without changing signs or roots.
  Polynomial specialize(size_t v, const Rat& q) const;
  Rat eval(const std::vector<Rat>& point) const;

  Int int_content() const;  // positive
  // Primitive over Z with positive lex-leading coefficient.
  Polynomial canonical() const;
  // Negated if the lex-leading coefficient is negative; magnitude kept.
  Polynomial sign_normalized() const;

  UPoly to_upoly(size_t v) const;  // requires all other variables absent
  static Polynomial from_upoly(const UPoly& p, VarOrderPtr ord, size_t v);
  Polynomial reordered(const VarOrderPtr& target) const;

  std::string str() const;

  // Deterministic total order for canonical containers.
  static int cmp(const Polynomial& a, const Polynomial& b);
  bool operator<(const Polynomial& o) const { return cmp(*this, o) < 0; }

 private:
  void normalize();
  VarOrderPtr ord_;
  std::vector<std::pair<Expo, Int>> terms_;
};

// Canonicalized set: primitive, positive leading coefficient, constants
// removed, duplicates (hence constant multiples) merged.
class PolySet {
 public:
  PolySet() = default;
  explicit PolySet(const std::vector<Polynomial>& polys);

  void insert(const Polynomial& p);
  void insert_all(const PolySet& o);
  bool contains(const Polynomial& p) const;
  bool empty() const { return elems_.empty(); }
  size_t size() const { return elems_.size(); }
  const std::vector<Polynomial>& elems() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  bool operator==(const PolySet& o) const { return elems_ == o.elems_; }
  bool subset_of(const PolySet& o) const;
  std::string str() const;

 private:
  std::vector<Polynomial> elems_;  // sorted, unique, canonical
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Content/primitive part with respect to v; f = content * primitive and the
// primitive part's leading coefficient is canonically positive.
Polynomial content(const Polynomial& f, size_t v);
Polynomial primitive_part(const Polynomial& f, size_t v);

// Sylvester resultant eliminating v, computed by a subresultant PRS with the
// determinant's sign convention.
Polynomial resultant(const Polynomial& f, const Polynomial& g, size_t v);
// disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f); degree in v must be >= 2.
Polynomial discriminant(const Polynomial& f, size_t v);

// Squarefree factors of f in v with multiplicities (Yun), f primitive in v.
std::vector<std::pair<Polynomial, unsigned>> squarefree_decompose(const Polynomial& f, size_t v);

// Finest basis reachable by squarefree decomposition plus pairwise
// gcd-splitting: pairwise coprime squarefree polynomials of positive degree
// in v whose products reproduce the inputs up to constants.
std::vector<Polynomial> squarefree_basis(const std::vector<Polynomial>& polys, size_t v);

// Multiplicity of each basis element in f (trial division), for checks.
unsigned multiplicity_of(const Polynomial& f, const Polynomial& b);

}  // namespace cad

#endif
