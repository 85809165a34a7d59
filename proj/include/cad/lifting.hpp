#ifndef CAD_LIFTING_HPP
#define CAD_LIFTING_HPP

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cad/qff.hpp"
#include "cad/realalg.hpp"

namespace cad {

enum class CadKind { SignInv, OrderInv, Ec, Tti };

struct Cell {
  std::vector<int> index;  // odd local index = sector, even = section
  SamplePoint sample;
  int dim = 0;
  std::optional<std::vector<bool>> truth;
  PolySet lift_set;  // polynomials whose stack sits over this cell
  Cell* parent = nullptr;
  std::vector<std::unique_ptr<Cell>> kids;

  size_t level() const { return index.size(); }
};

struct FailWitness {
  size_t level;                 // dimension being lifted when the failure hit
  std::vector<int> cell_index;  // base cell of that lift
  Polynomial poly;
  std::string phase;  // "cadw" or "tticad"
  std::string str() const;
};

struct Cad {
  VarOrderPtr order;
  CadKind kind = CadKind::SignInv;
  std::unique_ptr<Cell> root;  // level-0 cell
  std::vector<size_t> level_counts;

  // cells of the sub-CAD that went through the constant-excluded-polynomials
  // relaxation instead of failing
  std::vector<std::vector<int>> excl_pathway_cells;
  PolySet excl_polys_seen;

  size_t leaf_count() const { return level_counts.empty() ? 1 : level_counts.back(); }
  std::vector<const Cell*> leaves() const;
  std::vector<Cell*> leaves();
  void recount();
};

struct CadOutcome {
  std::optional<Cad> cad;
  std::optional<FailWitness> fail;
  bool ok() const { return cad.has_value(); }
};

struct LiftOptions {
  int threads = 0;  // 0: all hardware threads
};

// Order-invariant CAD of R^k for A (polynomials in the first k variables)
// via the full projection operator.  Nullification over a cell of positive
// dimension fails; over a point the stack falls back to the roots of a
// delineating polynomial built from the least-order nonvanishing partials.
// With relaxed_top the last lift only guarantees sign-invariance and skips
// identically-vanishing polynomials instead of failing.
CadOutcome cadw(size_t k, const PolySet& A, const VarOrderPtr& order, const LiftOptions& opts = {},
                bool relaxed_top = false);

// Stack over one cell: 2s+1 alternating sector/section children where s is
// the number of distinct real roots of the polynomials at the sample point.
// Nullified polynomials are an error here; callers resolve policy first.
struct StackError {
  Polynomial poly;
};
std::variant<std::vector<std::unique_ptr<Cell>>, StackError> stack_over(Cell& c,
                                                                        const PolySet& polys,
                                                                        size_t v);

// Truth-table invariant CAD for the formula list.
CadOutcome tticad(const QffList& q, const LiftOptions& opts = {});

// Single formula with a designated constraint.
CadOutcome ec_cad(const QffList& q, const LiftOptions& opts = {});

// Scheme dispatcher: sign-invariant, merged product-constraint, truth-table
// invariant, or the full operator over the resultant-augmented set.
CadOutcome build_cad(const QffList& q, Scheme scheme, const LiftOptions& opts = {});

// Populate every leaf's truth vector by exact evaluation at its sample.
void fill_truth(Cad& cad, const QffList& q, const LiftOptions& opts = {});

// Leaf containing the given point, by sign-consistent descent.
const Cell* locate_leaf(const Cad& cad, const SamplePoint& point);

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace cad

#endif
