#ifndef CAD_COMPLEXITY_HPP
#define CAD_COMPLEXITY_HPP

#include <vector>

#include "cad/poly.hpp"

namespace cad {

// Max over the variables of the degree of the product of the set.
long combined_degree(const PolySet& S);

struct MdClaim {
  unsigned m;
  long d;
  bool optimal = true;  // false when the greedy fallback produced it
};

// Does the partition certify the (m,d)-property?  The partition must cover
// the set exactly; blocks are index lists into S.elems().
bool verify_md(const PolySet& S, const std::vector<std::vector<size_t>>& partition, unsigned m, long d);

// Smallest d such that S partitions into at most m blocks of combined degree
// <= d.  Exhaustive for |S| <= 12, first-fit-decreasing greedy beyond.
MdClaim best_md_for_m(const PolySet& S, unsigned m);
// The certifying partition found alongside best_md_for_m.
std::vector<std::vector<size_t>> best_md_partition(const PolySet& S, unsigned m);

enum class BoundScheme { SignInv, Ec, TtiAllEc, EcImplicit, TtiGeneral };

struct BoundScenario {
  BoundScheme scheme = BoundScheme::SignInv;
  unsigned n = 2;  // variables
  unsigned m = 1;  // polynomials
  unsigned d = 1;  // max degree
  unsigned t = 1;  // formula count
  unsigned e = 0;   // formulas carrying a constraint
  unsigned m_e = 0; // polynomials defining those formulas
  unsigned m_n = 0; // the remaining polynomials
  bool final_lift_reduction = true;
  bool improved_general = true;  // the sharpened combined floor
};

// The number of (m,d)-partition blocks after one projection under the given
// scheme; floors evaluated exactly.
Int m_after_projection(const BoundScenario& sc);

struct GrowthRow {
  int level;  // n..1, or 0 for the closing product row
  Int number;
  Int degree;
  Int product;
};

// Projection expression growth: level n holds (m, d), level n-r holds
// M^(2^(r-1)) sets of combined degree 2^(2^r - 1) d^(2^r), and the final row
// multiplies the columns out.
std::vector<GrowthRow> growth_table(const Int& M, unsigned m, unsigned d, unsigned n);

// Dominant term of the cell-count bound: 2^(2^n - 1) d^(2^n - 1)
// M^(2^(n-1) - 1) times the final-lift factor.
Int dominant_cell_bound(const BoundScenario& sc);

}  // namespace cad

#endif
