#ifndef CAD_QFF_HPP
#define CAD_QFF_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cad/poly.hpp"
#include "cad/projection.hpp"

namespace cad {

enum class Rel { Eq, Ne, Lt, Gt, Le, Ge };

std::string rel_str(Rel r);
bool rel_holds(Rel r, int sign);

struct Atom {
  Polynomial poly;  // integer coefficients, compared against 0
  Rel rel;
};

struct QffNode {
  enum class Kind { Atom, Not, And, Or, Imp };
  Kind kind = Kind::Atom;
  size_t atom = 0;             // Kind::Atom
  std::vector<QffNode> kids;   // 1 for Not, 2 for And/Or/Imp
};

struct Qff {
  std::vector<Atom> atoms;
  QffNode root;
  std::optional<size_t> designated_ec;  // index into atoms; always an equality

  PolySet polys() const;
  std::string str(const VarOrderPtr& order) const;
};

struct QffList {
  VarOrderPtr order;
  std::vector<Qff> formulae;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

// Problem text: `vars x, y;` then formulae separated by `;`, with `[ec]`
// marking the designated constraint atom; `option key value...;` lines ride
// along for the CLI.
struct ProblemFile {
  QffList qffs;
  std::map<std::string, std::vector<std::string>> options;
};

ProblemFile parse_problem(const std::string& text);
QffList parse(const std::string& text);
// Polynomial expression over a fixed order; rationals cleared to integers.
Polynomial parse_poly(const std::string& text, const VarOrderPtr& order);

bool eval_truth(const Qff& q, const std::map<Polynomial, int>& signs);

ProjectionInput derive_projection_input(const QffList& q);

// Variable-ordering heuristics.
std::vector<VarOrderPtr> brown_order(const QffList& q);
long sotd(const std::vector<PolySet>& levels);
int ndrr(const PolySet& univariate);

// Projection levels n..1 for the heuristic measures; index 0 = level 1.
enum class Scheme { Sign, Ec, Tti, Rescad };
std::string scheme_name(Scheme s);
std::vector<PolySet> projection_levels(const QffList& q, Scheme scheme);

// One QffList per admissible designation of explicit equality conjuncts.
std::vector<QffList> ec_designation_candidates(const QffList& q, size_t cap = 64);

// Merge a multi-formula list into the single-formula product-constraint
// formulation (every formula must carry a designated constraint).
QffList merged_product_ec(const QffList& q);

// The family of worked problems indexed by j >= 1: circles f_k and
// hyperbolas g_k shifted along a diagonal.
QffList family_phi(unsigned j);
QffList family_psi(unsigned j);

// Re-express every polynomial of q under a permuted variable order.
QffList reorder_qffs(const QffList& q, const VarOrderPtr& target);

}  // namespace cad

#endif
