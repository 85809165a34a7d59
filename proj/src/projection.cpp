#include "cad/projection.hpp"

#include <algorithm>
#include <stdexcept>

#include "cad/upoly.hpp"

namespace cad {

std::string prov_tag_name(ProvTag t) {
  switch (t) {
    case ProvTag::Content: return "content";
    case ProvTag::Coefficient: return "coefficient";
    case ProvTag::Discriminant: return "discriminant";
    case ProvTag::ResultantWithin: return "resultant-within";
    case ProvTag::CrossResultant: return "cross-resultant";
    case ProvTag::Excluded: return "excluded";
  }
  return "?";
}

void ProjectionSet::add(const Polynomial& p, ProvTag tag) {
  Polynomial c = p.canonical();
  if (c.is_constant()) return;
  polys.insert(c);
  provenance.emplace(c, tag);  // first tag wins
}

void ProjectionSet::add_all(const ProjectionSet& o) {
  for (const auto& p : o.polys) add(p, o.provenance.at(p));
}

namespace {

bool divides_some(const Polynomial& b, const PolySet& E, size_t v) {
  for (const auto& e : E) {
    if (e.degree(v) <= 0) continue;
    if (primitive_part(e, v).divided_by(b)) return true;
  }
  return false;
}

// Does the system {polys = 0} provably lack a common real zero?  Checks:
// a nonzero-constant member, or all members univariate in one variable with
// a root-free gcd.
bool provably_no_common_zero(const std::vector<Polynomial>& polys) {
  for (const auto& p : polys)
    if (p.is_constant() && sgn_of(p.const_value()) != 0) return true;
  std::optional<size_t> var;
  for (const auto& p : polys) {
    auto used = p.vars_used();
    if (used.size() > 1) return false;
    if (used.size() == 1) {
      if (var && *var != used[0]) return false;
      var = used[0];
    }
  }
  if (!var) return false;  // all constants, none nonzero
  Polynomial g(polys.front().order());
  for (const auto& p : polys) g = g.is_zero() ? p : gcd(g, p);
  if (g.is_constant()) return true;
  return isolate_real_roots(g.to_upoly(*var)).empty();
}

}  // namespace

std::vector<Polynomial> projected_coefficients(const Polynomial& f, size_t v) {
  std::vector<Polynomial> out;
  auto coeffs = f.coeffs_in(v);
  if (coeffs.empty()) return out;
  std::vector<Polynomial> system;
  for (auto& [d, c] : coeffs) system.push_back(c);
  const Polynomial& lead = system.front();
  if (lead.is_constant()) return out;  // degree never drops
  if (provably_no_common_zero(system)) {
    out.push_back(lead);
    return out;
  }
  for (auto& c : system)
    if (!c.is_constant()) out.push_back(c);
  return out;
}

FormulaBasis formula_basis(const PolySet& A, const PolySet& E, size_t v) {
  FormulaBasis fb;
  std::vector<Polynomial> with_v;
  for (const auto& f : A) {
    if (f.degree(v) > 0) {
      with_v.push_back(f);
      Polynomial c = content(f, v);
      if (!c.is_constant()) fb.contents.insert(c);
    } else {
      fb.contents.insert(f);
    }
  }
  fb.B = squarefree_basis(with_v, v);
  for (const auto& b : fb.B)
    if (divides_some(b, E, v)) fb.F.push_back(b);
  return fb;
}

namespace {

void add_p_of(ProjectionSet& out, const std::vector<Polynomial>& basis, size_t v) {
  for (const auto& f : basis)
    for (const auto& c : projected_coefficients(f, v)) out.add(c, ProvTag::Coefficient);
  for (const auto& f : basis)
    if (f.degree(v) >= 2) out.add(discriminant(f, v), ProvTag::Discriminant);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      out.add(resultant(basis[i], basis[j], v), ProvTag::ResultantWithin);
}

void add_reduced(ProjectionSet& out, const FormulaBasis& fb, size_t v) {
  for (const auto& c : fb.contents) out.add(c, ProvTag::Content);
  add_p_of(out, fb.F, v);
  for (const auto& f : fb.F) {
    for (const auto& g : fb.B) {
      if (std::find(fb.F.begin(), fb.F.end(), g) != fb.F.end()) continue;
      out.add(resultant(f, g, v), ProvTag::ResultantWithin);
    }
  }
}

}  // namespace

ProjectionSet proj_full(const PolySet& A, size_t v) {
  ProjectionSet out;
  FormulaBasis fb = formula_basis(A, A, v);
  for (const auto& c : fb.contents) out.add(c, ProvTag::Content);
  add_p_of(out, fb.B, v);
  return out;
}

ProjectionSet proj_ec(const PolySet& A, const PolySet& E, size_t v) {
  if (!E.subset_of(A)) throw std::invalid_argument("proj_ec: E must be a subset of A");
  ProjectionSet out;
  add_reduced(out, formula_basis(A, E, v), v);
  return out;
}

ProjectionSet proj_tti(const ProjectionInput& in, size_t v) {
  ProjectionSet out;
  std::vector<FormulaBasis> fbs;
  fbs.reserve(in.count());
  for (size_t i = 0; i < in.count(); ++i) {
    fbs.push_back(formula_basis(in.A_list[i], in.E_list[i], v));
    add_reduced(out, fbs.back(), v);
  }
  for (size_t i = 0; i < fbs.size(); ++i)
    for (size_t j = i + 1; j < fbs.size(); ++j)
      for (const auto& f : fbs[i].F)
        for (const auto& fh : fbs[j].F) {
          if (f == fh) continue;
          out.add(resultant(f, fh, v), ProvTag::CrossResultant);
        }
  return out;
}

PolySet rescad_set(const ProjectionInput& in) {
  size_t v = in.order->size() - 1;
  PolySet out;
  for (size_t i = 0; i < in.count(); ++i) {
    for (const auto& e : in.E_list[i]) out.insert(e);
    for (const auto& e : in.E_list[i]) {
      if (e.degree(v) <= 0) continue;
      for (const auto& a : in.A_list[i]) {
        if (in.E_list[i].contains(a)) continue;
        if (a.degree(v) <= 0) continue;
        out.insert(resultant(e, a, v));
      }
    }
  }
  return out;
}

PolySet excluded_polys(const PolySet& A, const PolySet& E, size_t v) {
  if (!E.subset_of(A)) throw std::invalid_argument("excluded_polys: E must be a subset of A");
  FormulaBasis fb = formula_basis(A, E, v);
  std::vector<Polynomial> rest;
  for (const auto& b : fb.B)
    if (std::find(fb.F.begin(), fb.F.end(), b) == fb.F.end()) rest.push_back(b);
  ProjectionSet tmp;
  add_p_of(tmp, rest, v);
  return tmp.polys;
}

}  // namespace cad
