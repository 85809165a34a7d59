#include "cad/lifting.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

namespace cad {

std::string FailWitness::str() const {
  std::ostringstream os;
  os << "not well-oriented (" << phase << "): " << poly.str() << " nullified over cell (";
  for (size_t i = 0; i < cell_index.size(); ++i) os << (i ? "," : "") << cell_index[i];
  os << ") while lifting to level " << level;
  return os.str();
}

std::vector<const Cell*> Cad::leaves() const {
  std::vector<const Cell*> out;
  size_t n = order->size();
  std::function<void(const Cell*)> walk = [&](const Cell* c) {
    if (c->level() == n) {
      out.push_back(c);
      return;
    }
    for (const auto& k : c->kids) walk(k.get());
  };
  walk(root.get());
  return out;
}

std::vector<Cell*> Cad::leaves() {
  std::vector<Cell*> out;
  size_t n = order->size();
  std::function<void(Cell*)> walk = [&](Cell* c) {
    if (c->level() == n) {
      out.push_back(c);
      return;
    }
    for (auto& k : c->kids) walk(k.get());
  };
  walk(root.get());
  return out;
}

void Cad::recount() {
  level_counts.assign(order->size(), 0);
  std::function<void(const Cell*)> walk = [&](const Cell* c) {
    if (c->level() > 0) level_counts[c->level() - 1] += 1;
    for (const auto& k : c->kids) walk(k.get());
  };
  walk(root.get());
}

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
  unsigned t = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  if (t < 1) t = 1;
  t = std::min<unsigned>(t, n == 0 ? 1 : static_cast<unsigned>(n));
  if (t <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w]() {
      for (size_t i = w; i < n; i += t) {
        try {
          fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

namespace {

Rat root_upper(const LiftedRoot& r) { return r.is_rational ? r.value : r.hi; }
Rat root_lower(const LiftedRoot& r) { return r.is_rational ? r.value : r.lo; }

std::vector<LiftedRoot> merge_roots(Tower& tw, std::vector<LiftedRoot>&& all) {
  std::vector<LiftedRoot> merged;
  for (auto& r : all) {
    size_t pos = merged.size();
    bool dup = false;
    for (size_t i = 0; i < merged.size(); ++i) {
      int c = compare_roots(tw, merged[i], r);
      if (c == 0) {
        dup = true;
        break;
      }
      if (c > 0) {
        pos = i;
        break;
      }
    }
    if (!dup) merged.insert(merged.begin() + pos, std::move(r));
  }
  return merged;
}

Rat sector_between(Tower& tw, LiftedRoot& a, LiftedRoot& b) {
  int guard = 0;
  while (!(root_upper(a) < root_lower(b))) {
    refine_root(tw, a);
    refine_root(tw, b);
    if (++guard > 2000) {
      std::ostringstream os;
      os << "sector_between: failed to separate neighboring roots\n";
      auto dump = [&](const char* name, LiftedRoot& r) {
        os << name << ": rat=" << r.is_rational;
        if (r.is_rational)
          os << " value=" << r.value.get_str();
        else {
          os << " lo=" << r.lo.get_str() << " hi=" << r.hi.get_str() << " deg=" << r.poly.size() - 1
             << " sign_lo=" << r.sign_lo << " coeffs~[";
          for (auto& c : r.poly) {
            RatInterval e = tw.enclose(c);
            os << " " << rat_mid(e.lo, e.hi).get_d();
          }
          os << " ]";
        }
        os << "\n";
      };
      dump("a", a);
      dump("b", b);
      os << "cmp=" << compare_roots(tw, a, b);
      throw std::runtime_error(os.str());
    }
  }
  return rat_mid(root_upper(a), root_lower(b));
}

std::vector<std::unique_ptr<Cell>> assemble_stack(Cell& c, std::vector<LiftedRoot>&& roots) {
  Tower& tw = c.sample.tower();
  size_t s = roots.size();
  std::vector<std::unique_ptr<Cell>> kids;
  kids.reserve(2 * s + 1);
  auto make = [&](int local, SamplePoint sp) {
    auto cell = std::make_unique<Cell>();
    cell->index = c.index;
    cell->index.push_back(local);
    cell->sample = std::move(sp);
    cell->dim = c.dim + (local % 2);
    cell->parent = &c;
    kids.push_back(std::move(cell));
  };
  if (s == 0) {
    make(1, c.sample.extended_with_rational(Rat(0)));
    return kids;
  }
  Rat below = Rat(rat_floor(root_lower(roots[0]))) - 1;
  make(1, c.sample.extended_with_rational(below));
  for (size_t i = 0; i < s; ++i) {
    make(static_cast<int>(2 * i + 2), c.sample.extended_with_root(roots[i]));
    if (i + 1 < s) {
      Rat mid = sector_between(tw, roots[i], roots[i + 1]);
      make(static_cast<int>(2 * i + 3), c.sample.extended_with_rational(mid));
    }
  }
  Rat above = Rat(rat_ceil(root_upper(roots[s - 1]))) + 1;
  make(static_cast<int>(2 * s + 1), c.sample.extended_with_rational(above));
  return kids;
}

// Multi-indices of total order m over nvars variables.
void enum_multi_indices(size_t nvars, unsigned m, Expo& cur, size_t at,
                        const std::function<void(const Expo&)>& fn) {
  if (at + 1 == nvars) {
    cur[at] = m;
    fn(cur);
    cur[at] = 0;
    return;
  }
  for (unsigned k = 0; k <= m; ++k) {
    cur[at] = k;
    enum_multi_indices(nvars, m - k, cur, at + 1, fn);
  }
  cur[at] = 0;
}

// Stack contribution of a polynomial nullified over a zero-dimensional cell:
// the roots of the sum of squares of its least-order nonvanishing partials.
std::vector<LiftedRoot> delineating_roots(Cell& c, const Polynomial& p, size_t v) {
  Tower& tw = c.sample.tower();
  int maxorder = p.total_degree();
  for (int m = 1; m <= maxorder; ++m) {
    Tower::KPoly D;
    bool any = false;
    Expo cur(v + 1, 0);
    enum_multi_indices(v + 1, static_cast<unsigned>(m), cur, 0, [&](const Expo& nu) {
      Polynomial dp = p;
      for (size_t var = 0; var <= v && !dp.is_zero(); ++var)
        for (unsigned k = 0; k < nu[var]; ++k) dp = dp.derivative(var);
      if (dp.is_zero()) return;
      Tower::KPoly g = specialize_over(dp, c.sample, v);
      if (tw.kdeg(g) < 0) return;
      any = true;
      D = tw.kadd(D, tw.kmul(g, g));
    });
    if (!any) continue;
    if (tw.kdeg(D) <= 0) return {};
    Tower::KPoly sf = tw.ksquarefree(std::move(D));
    std::vector<LiftedRoot> out;
    for (auto& [lo, hi] : tw.isolate(sf)) {
      LiftedRoot lr;
      lr.poly = sf;
      lr.lo = lo;
      lr.hi = hi;
      lr.sign_lo = tw.ksign_at(sf, lo);
      out.push_back(std::move(lr));
    }
    return out;
  }
  throw std::logic_error("delineating_roots: nonzero polynomial with all partials vanishing");
}

using StackResult = std::variant<std::vector<std::unique_ptr<Cell>>, FailWitness>;

// Order-invariant policy: positive-dimension nullification fails, points
// fall back to a delineating polynomial.
StackResult lift_cell_order_invariant(Cell& c, const std::vector<Polynomial>& basis, size_t level) {
  size_t v = level - 1;
  std::vector<LiftedRoot> all;
  for (const auto& b : basis) {
    auto r = roots_over_point(b, c.sample, v);
    if (r.nullified) {
      if (c.dim > 0) return FailWitness{level, c.index, b, "cadw"};
      for (auto& dr : delineating_roots(c, b, v)) all.push_back(std::move(dr));
      continue;
    }
    for (auto& root : r.roots) all.push_back(std::move(root));
  }
  c.lift_set = PolySet(basis);
  return assemble_stack(c, merge_roots(c.sample.tower(), std::move(all)));
}

// Sign-invariant policy for the final lift: identically-vanishing
// specializations contribute no sections and are skipped.
std::vector<std::unique_ptr<Cell>> lift_cell_skip_nullified(Cell& c,
                                                            const std::vector<Polynomial>& polys,
                                                            size_t level) {
  size_t v = level - 1;
  std::vector<LiftedRoot> all;
  for (const auto& b : polys) {
    auto r = roots_over_point(b, c.sample, v);
    if (r.nullified) continue;
    for (auto& root : r.roots) all.push_back(std::move(root));
  }
  c.lift_set = PolySet(polys);
  return assemble_stack(c, merge_roots(c.sample.tower(), std::move(all)));
}

std::vector<Cell*> cells_at_level(Cad& cad, size_t level) {
  std::vector<Cell*> out;
  std::function<void(Cell*)> walk = [&](Cell* c) {
    if (c->level() == level) {
      out.push_back(c);
      return;
    }
    for (auto& k : c->kids) walk(k.get());
  };
  walk(cad.root.get());
  return out;
}

std::optional<FailWitness> lift_layer(Cad& cad, size_t level, const LiftOptions& opts,
                                      const std::function<StackResult(Cell&)>& lift) {
  std::vector<Cell*> layer = cells_at_level(cad, level - 1);
  std::vector<StackResult> results(layer.size());
  parallel_for(layer.size(), opts.threads, [&](size_t i) { results[i] = lift(*layer[i]); });
  for (size_t i = 0; i < layer.size(); ++i) {
    if (std::holds_alternative<FailWitness>(results[i])) return std::get<FailWitness>(results[i]);
    layer[i]->kids = std::move(std::get<0>(results[i]));
  }
  return std::nullopt;
}

}  // namespace

CadOutcome cadw(size_t k, const PolySet& A, const VarOrderPtr& order, const LiftOptions& opts,
                bool relaxed_top) {
  CadOutcome out;
  Cad cad;
  cad.order = order;
  cad.kind = CadKind::OrderInv;
  cad.root = std::make_unique<Cell>();
  std::vector<std::vector<Polynomial>> bases(k + 1);
  PolySet cur = A;
  for (size_t j = k; j >= 1; --j) {
    bases[j] = formula_basis(cur, cur, j - 1).B;
    if (j > 1) cur = proj_full(cur, j - 1).polys;
  }
  for (size_t j = 1; j <= k; ++j) {
    bool relax = relaxed_top && j == k;
    auto fail = lift_layer(cad, j, opts, [&](Cell& c) -> StackResult {
      if (relax) return lift_cell_skip_nullified(c, bases[j], j);
      return lift_cell_order_invariant(c, bases[j], j);
    });
    if (fail) {
      out.fail = std::move(fail);
      return out;
    }
  }
  cad.level_counts.assign(k, 0);
  cad.recount();
  out.cad = std::move(cad);
  return out;
}

std::variant<std::vector<std::unique_ptr<Cell>>, StackError> stack_over(Cell& c, const PolySet& polys,
                                                                        size_t v) {
  std::vector<LiftedRoot> all;
  for (const auto& p : polys) {
    auto r = roots_over_point(p, c.sample, v);
    if (r.nullified) return StackError{p};
    for (auto& root : r.roots) all.push_back(std::move(root));
  }
  c.lift_set = polys;
  return assemble_stack(c, merge_roots(c.sample.tower(), std::move(all)));
}

namespace {

// Nullification of a constraint polynomial, tested through its content and
// basis factors: e vanishes identically over the cell iff its content is
// zero there or one of its factors specializes to the zero polynomial.
struct NullCheck {
  Polynomial content_part;            // nonconstant content, if any
  std::vector<Polynomial> factors;    // basis elements dividing prim(e)
};

NullCheck make_null_check(const Polynomial& e, const std::vector<Polynomial>& basis, size_t v) {
  NullCheck nc;
  if (e.degree(v) <= 0) {
    nc.content_part = e;
    return nc;
  }
  Polynomial c = content(e, v);
  if (!c.is_constant()) nc.content_part = c;
  Polynomial rest = primitive_part(e, v);
  for (const auto& b : basis) {
    while (true) {
      auto q = rest.divided_by(b);
      if (!q) break;
      rest = std::move(*q);
    }
    if (std::find(nc.factors.begin(), nc.factors.end(), b) == nc.factors.end() &&
        multiplicity_of(primitive_part(e, v), b) > 0)
      nc.factors.push_back(b);
  }
  return nc;
}

bool elem_nullified(Cell& c, const NullCheck& nc, size_t topvar) {
  if (!nc.content_part.is_zero() && !nc.content_part.is_constant() &&
      sign_at(nc.content_part, c.sample) == 0)
    return true;
  for (const auto& f : nc.factors)
    if (roots_over_point(f, c.sample, topvar).nullified) return true;
  return false;
}

// A section coordinate is pinned to a rational constant across its whole
// cell when a univariate polynomial of the stack's lifting set vanishes at
// it: that constant section coincides with the cell's section.
void collect_pins(const Cell* c, std::vector<std::optional<Rat>>& pins) {
  const Cell* cur = c;
  while (cur->parent != nullptr) {
    size_t level = cur->level();
    if (cur->index.back() % 2 == 0 && cur->sample.coord(level - 1).is_rat) {
      const Rat& q = cur->sample.coord(level - 1).q;
      for (const auto& p : cur->parent->lift_set) {
        auto used = p.vars_used();
        if (used.size() == 1 && used[0] == level - 1 && p.specialize(level - 1, q).is_zero()) {
          pins[level - 1] = q;
          break;
        }
      }
    }
    cur = cur->parent;
  }
}

bool constant_on_cell(const Polynomial& e, const Cell* c) {
  if (c->dim == 0) return true;
  std::vector<std::optional<Rat>> pins(c->level());
  collect_pins(c, pins);
  Polynomial r = e;
  for (size_t v = 0; v < pins.size() && !r.is_constant(); ++v)
    if (pins[v]) r = r.specialize(v, *pins[v]);
  return r.is_constant();
}

}  // namespace

CadOutcome tticad(const QffList& q, const LiftOptions& opts) {
  CadOutcome out;
  size_t n = q.order->size();
  ProjectionInput in = derive_projection_input(q);
  size_t t = in.count();
  std::vector<FormulaBasis> fbs;
  std::vector<bool> designated(t);
  for (size_t i = 0; i < t; ++i) {
    fbs.push_back(formula_basis(in.A_list[i], in.E_list[i], n - 1));
    designated[i] = !(in.E_list[i] == in.A_list[i]);
  }

  Cad cad;
  cad.order = q.order;
  cad.kind = CadKind::Tti;
  cad.root = std::make_unique<Cell>();

  if (n == 1) {
    PolySet F;
    for (const auto& fb : fbs)
      for (const auto& f : fb.F) F.insert(f);
    cad.root->kids = lift_cell_skip_nullified(*cad.root, F.elems(), 1);
    cad.level_counts.assign(1, 0);
    cad.recount();
    out.cad = std::move(cad);
    return out;
  }

  ProjectionSet proj = proj_tti(in, n - 1);
  CadOutcome sub = cadw(n - 1, proj.polys, q.order, opts);
  if (!sub.ok()) {
    out.fail = std::move(sub.fail);
    return out;
  }
  cad = std::move(*sub.cad);
  cad.order = q.order;
  cad.kind = CadKind::Tti;

  std::vector<PolySet> excl(t);
  std::vector<std::vector<std::pair<Polynomial, NullCheck>>> checks(t);
  for (size_t i = 0; i < t; ++i) {
    if (!designated[i]) continue;
    excl[i] = excluded_polys(in.A_list[i], in.E_list[i], n - 1);
    for (const auto& e : in.E_list[i])
      checks[i].push_back({e, make_null_check(e, fbs[i].F, n - 1)});
  }

  struct ExclHit {
    std::vector<int> cell;
    PolySet polys;
  };
  std::vector<Cell*> layer = cells_at_level(cad, n - 1);
  std::vector<StackResult> results(layer.size());
  std::vector<std::optional<ExclHit>> hits(layer.size());
  parallel_for(layer.size(), opts.threads, [&](size_t ci) {
    Cell& c = *layer[ci];
    PolySet L;
    for (size_t i = 0; i < t; ++i) {
      if (!designated[i]) {
        for (const auto& f : fbs[i].F) L.insert(f);
        continue;
      }
      bool nullified = false;
      Polynomial witness;
      for (const auto& [e, nc] : checks[i]) {
        if (elem_nullified(c, nc, n - 1)) {
          nullified = true;
          witness = e;
          break;
        }
      }
      if (!nullified) {
        for (const auto& f : fbs[i].F) L.insert(f);
        continue;
      }
      if (c.dim == 0) {
        for (const auto& b : fbs[i].B) L.insert(b);
        if (!hits[ci]) hits[ci] = ExclHit{c.index, excl[i]};
        continue;
      }
      bool all_const = true;
      for (const auto& e : excl[i])
        if (!constant_on_cell(e, &c)) {
          all_const = false;
          break;
        }
      if (all_const) {
        for (const auto& b : fbs[i].B) L.insert(b);
        if (!hits[ci]) hits[ci] = ExclHit{c.index, excl[i]};
        continue;
      }
      results[ci] = FailWitness{n, c.index, witness, "tticad"};
      return;
    }
    results[ci] = lift_cell_skip_nullified(c, L.elems(), n);
  });
  for (size_t ci = 0; ci < layer.size(); ++ci) {
    if (std::holds_alternative<FailWitness>(results[ci])) {
      out.fail = std::get<FailWitness>(results[ci]);
      return out;
    }
    layer[ci]->kids = std::move(std::get<0>(results[ci]));
    if (hits[ci]) {
      cad.excl_pathway_cells.push_back(hits[ci]->cell);
      cad.excl_polys_seen.insert_all(hits[ci]->polys);
    }
  }
  cad.level_counts.assign(n, 0);
  cad.recount();
  out.cad = std::move(cad);
  return out;
}

CadOutcome ec_cad(const QffList& q, const LiftOptions& opts) {
  if (q.formulae.size() != 1 || !q.formulae[0].designated_ec)
    throw std::invalid_argument("ec_cad: need exactly one formula with a designated constraint");
  CadOutcome out = tticad(q, opts);
  if (out.ok()) out.cad->kind = CadKind::Ec;
  return out;
}

CadOutcome build_cad(const QffList& q, Scheme scheme, const LiftOptions& opts) {
  size_t n = q.order->size();
  switch (scheme) {
    case Scheme::Sign: {
      PolySet all;
      for (const auto& f : q.formulae) all.insert_all(f.polys());
      CadOutcome out = cadw(n, all, q.order, opts, /*relaxed_top=*/true);
      if (out.ok()) out.cad->kind = CadKind::SignInv;
      return out;
    }
    case Scheme::Tti:
      return tticad(q, opts);
    case Scheme::Ec: {
      QffList merged = merged_product_ec(q);
      CadOutcome out = tticad(merged, opts);
      if (out.ok()) out.cad->kind = CadKind::Ec;
      return out;
    }
    case Scheme::Rescad: {
      ProjectionInput in = derive_projection_input(q);
      CadOutcome out = cadw(n, rescad_set(in), q.order, opts, /*relaxed_top=*/true);
      if (out.ok()) out.cad->kind = CadKind::Tti;
      return out;
    }
  }
  throw std::logic_error("build_cad: unknown scheme");
}

void fill_truth(Cad& cad, const QffList& q, const LiftOptions& opts) {
  PolySet atom_polys;
  for (const auto& f : q.formulae) atom_polys.insert_all(f.polys());
  std::vector<Cell*> lv = cad.leaves();
  parallel_for(lv.size(), opts.threads, [&](size_t i) {
    Cell* c = lv[i];
    std::map<Polynomial, int> signs;
    for (const auto& p : atom_polys) signs[p] = sign_at(p, c->sample);
    std::vector<bool> tv;
    for (const auto& f : q.formulae) tv.push_back(eval_truth(f, signs));
    c->truth = std::move(tv);
  });
}

const Cell* locate_leaf(const Cad& cad, const SamplePoint& point) {
  size_t n = cad.order->size();
  if (point.size() != n) throw std::invalid_argument("locate_leaf: dimension mismatch");
  SamplePoint pt = point;  // private refinable copy
  Tower& tw = pt.tower();
  const Cell* cur = cad.root.get();
  for (size_t j = 1; j <= n; ++j) {
    SamplePoint prefix = pt.prefix(j - 1);
    std::vector<LiftedRoot> all;
    for (const auto& p : cur->lift_set) {
      auto r = roots_over_point(p, prefix, j - 1);
      if (r.nullified) continue;  // no sections contributed over this point
      for (auto& root : r.roots) all.push_back(std::move(root));
    }
    std::vector<LiftedRoot> merged = merge_roots(tw, std::move(all));
    if (cur->kids.size() != 2 * merged.size() + 1)
      throw std::runtime_error("locate_leaf: stack size mismatch (invariance violated)");
    LiftedRoot pc = pt.coord_as_root(j - 1);
    size_t below = 0;
    bool matched = false;
    size_t local = 0;
    for (size_t i = 0; i < merged.size(); ++i) {
      int cres = compare_roots(tw, pc, merged[i]);
      if (cres == 0) {
        matched = true;
        local = 2 * (i + 1);
        break;
      }
      if (cres > 0) {
        ++below;
        continue;
      }
      break;
    }
    if (!matched) local = 2 * below + 1;
    cur = cur->kids[local - 1].get();
  }
  return cur;
}

}  // namespace cad
