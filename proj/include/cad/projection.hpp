#ifndef CAD_PROJECTION_HPP
#define CAD_PROJECTION_HPP

#include <map>
#include <string>
#include <vector>

#include "cad/poly.hpp"

namespace cad {

// Which projection rule emitted an element; an element arising from several
// rules keeps the first in this order.
enum class ProvTag { Content, Coefficient, Discriminant, ResultantWithin, CrossResultant, Excluded };

std::string prov_tag_name(ProvTag t);

struct ProjectionSet {
  PolySet polys;
  std::map<Polynomial, ProvTag> provenance;

  void add(const Polynomial& p, ProvTag tag);
  void add_all(const ProjectionSet& o);
};

// One formula's polynomials plus its equational-constraint subset
// (E_i = A_i when no constraint is designated).
struct ProjectionInput {
  std::vector<PolySet> A_list;
  std::vector<PolySet> E_list;
  VarOrderPtr order;

  size_t count() const { return A_list.size(); }
};

// Squarefree basis data for one formula: B from prim(A), F the subset of B
// dividing elements of E.
struct FormulaBasis {
  std::vector<Polynomial> B;
  std::vector<Polynomial> F;
  PolySet contents;  // nonconstant contents of the A-elements (v-free parts too)
};

FormulaBasis formula_basis(const PolySet& A, const PolySet& E, size_t v);

// Coefficients of f in v contributed to a projection: the leading coefficient
// alone when the coefficient system provably has no common real zero, all of
// them otherwise. Constant leading coefficient contributes nothing.
std::vector<Polynomial> projected_coefficients(const Polynomial& f, size_t v);

// McCallum operator P on the squarefree basis of prim(A); elements of A free
// of v pass through as contents.
ProjectionSet proj_full(const PolySet& A, size_t v);

// Reduced operator relative to the constraint set E.
ProjectionSet proj_ec(const PolySet& A, const PolySet& E, size_t v);

// Reduced projection of the list A_list with respect to E_list, including the
// cross resultant set.
ProjectionSet proj_tti(const ProjectionInput& in, size_t v);

// E together with the resultants of each formula's constraints against its
// other polynomials; feeding this to proj_full reproduces proj_tti.
PolySet rescad_set(const ProjectionInput& in);

// Projection polynomials excluded by the reduced operator: coefficients,
// discriminants and within-set resultants of the non-constraint basis part.
PolySet excluded_polys(const PolySet& A, const PolySet& E, size_t v);

}  // namespace cad

#endif
