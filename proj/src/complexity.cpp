#include "cad/complexity.hpp"

#include <algorithm>
#include <stdexcept>

namespace cad {

namespace {

long combined_degree_of(const std::vector<const Polynomial*>& block) {
  if (block.empty()) return 0;
  size_t n = block.front()->nvars();
  long best = 0;
  for (size_t v = 0; v < n; ++v) {
    long acc = 0;
    for (const Polynomial* p : block) acc += std::max(0, p->degree(v));
    best = std::max(best, acc);
  }
  return best;
}

}  // namespace

long combined_degree(const PolySet& S) {
  if (S.empty()) throw std::invalid_argument("combined_degree: empty set");
  std::vector<const Polynomial*> all;
  for (const auto& p : S) all.push_back(&p);
  return combined_degree_of(all);
}

bool verify_md(const PolySet& S, const std::vector<std::vector<size_t>>& partition, unsigned m, long d) {
  if (partition.size() > m) return false;
  std::vector<bool> seen(S.size(), false);
  for (const auto& block : partition) {
    std::vector<const Polynomial*> ptrs;
    for (size_t i : block) {
      if (i >= S.size() || seen[i]) throw std::invalid_argument("verify_md: invalid partition");
      seen[i] = true;
      ptrs.push_back(&S.elems()[i]);
    }
    if (combined_degree_of(ptrs) > d) return false;
  }
  for (bool b : seen)
    if (!b) throw std::invalid_argument("verify_md: partition does not cover the set");
  return true;
}

namespace {

constexpr size_t kExhaustiveCap = 12;

// Exhaustive search over partitions into at most m blocks, minimizing the
// max per-variable degree sum; branch and bound on the running maximum.
struct MdSearch {
  const std::vector<const Polynomial*>& polys;
  size_t nvars;
  unsigned mcap;
  long best = -1;
  std::vector<std::vector<long>> block_deg;         // per block, per var
  std::vector<std::vector<size_t>> blocks, best_blocks;

  MdSearch(const std::vector<const Polynomial*>& p, unsigned m)
      : polys(p), nvars(p.empty() ? 0 : p.front()->nvars()), mcap(m) {}

  long block_max(const std::vector<long>& degs) const {
    long mx = 0;
    for (long x : degs) mx = std::max(mx, x);
    return mx;
  }

  void run(size_t at, long cur) {
    if (best >= 0 && cur >= best) return;
    if (at == polys.size()) {
      best = cur;
      best_blocks = blocks;
      return;
    }
    const Polynomial* p = polys[at];
    for (size_t b = 0; b < blocks.size(); ++b) {
      std::vector<long> saved = block_deg[b];
      for (size_t v = 0; v < nvars; ++v) block_deg[b][v] += std::max(0, p->degree(v));
      blocks[b].push_back(at);
      run(at + 1, std::max(cur, block_max(block_deg[b])));
      blocks[b].pop_back();
      block_deg[b] = std::move(saved);
    }
    if (blocks.size() < mcap) {
      blocks.emplace_back(std::vector<size_t>{at});
      block_deg.emplace_back(nvars, 0);
      for (size_t v = 0; v < nvars; ++v) block_deg.back()[v] = std::max(0, p->degree(v));
      run(at + 1, std::max(cur, block_max(block_deg.back())));
      blocks.pop_back();
      block_deg.pop_back();
    }
  }
};

std::pair<MdClaim, std::vector<std::vector<size_t>>> best_md_impl(const PolySet& S, unsigned m) {
  if (S.empty() || m == 0) throw std::invalid_argument("best_md_for_m: empty set or m == 0");
  if (m > S.size()) m = static_cast<unsigned>(S.size());
  std::vector<const Polynomial*> ptrs;
  for (const auto& p : S) ptrs.push_back(&p);
  if (S.size() <= kExhaustiveCap) {
    MdSearch search(ptrs, m);
    search.run(0, 0);
    return {{m, search.best, true}, search.best_blocks};
  }
  // first-fit decreasing by combined degree
  std::vector<size_t> idx(S.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto deg1 = [&](size_t i) {
    std::vector<const Polynomial*> one{ptrs[i]};
    return combined_degree_of(one);
  };
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return deg1(a) > deg1(b); });
  std::vector<std::vector<size_t>> blocks(m);
  size_t nv = ptrs.front()->nvars();
  std::vector<std::vector<long>> degs(m, std::vector<long>(nv, 0));
  auto bmax = [&](const std::vector<long>& v) {
    long mx = 0;
    for (long x : v) mx = std::max(mx, x);
    return mx;
  };
  for (size_t i : idx) {
    size_t pick = 0;
    long best = -1;
    for (size_t b = 0; b < m; ++b) {
      std::vector<long> trial = degs[b];
      for (size_t v = 0; v < nv; ++v) trial[v] += std::max(0, ptrs[i]->degree(v));
      long mx = bmax(trial);
      if (best < 0 || mx < best) {
        best = mx;
        pick = b;
      }
    }
    blocks[pick].push_back(i);
    for (size_t v = 0; v < nv; ++v) degs[pick][v] += std::max(0, ptrs[i]->degree(v));
  }
  long overall = 0;
  for (auto& d : degs) overall = std::max(overall, bmax(d));
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }),
               blocks.end());
  return {{m, overall, false}, blocks};
}

}  // namespace

MdClaim best_md_for_m(const PolySet& S, unsigned m) { return best_md_impl(S, m).first; }

std::vector<std::vector<size_t>> best_md_partition(const PolySet& S, unsigned m) {
  return best_md_impl(S, m).second;
}

Int m_after_projection(const BoundScenario& sc) {
  Int m(sc.m), t(sc.t), e(sc.e), me(sc.m_e), mn(sc.m_n);
  switch (sc.scheme) {
    case BoundScheme::SignInv:
      return (m + 1) * (m + 1) / 2;
    case BoundScheme::Ec:
      return (3 * m + 1) / 2;
    case BoundScheme::TtiAllEc:
      if (sc.t < 1 || sc.t > sc.m) throw std::invalid_argument("m_after_projection: need 1 <= t <= m");
      return (3 * m + 1) / 2 + t * (t - 1) / 2;
    case BoundScheme::EcImplicit:
      if (sc.t < 1 || sc.t > sc.m) throw std::invalid_argument("m_after_projection: need 1 <= t <= m");
      return t * (2 * m - t + 1) / 2 + (m + 1) / 2;
    case BoundScheme::TtiGeneral: {
      if (sc.m_e + sc.m_n != sc.m || sc.e > sc.t)
        throw std::invalid_argument("m_after_projection: inconsistent split");
      Int cross = e * (e - 1 + 2 * mn) / 2;
      if (sc.improved_general) return ((mn + 1) * (mn + 1) + 3 * me) / 2 + cross;
      return (mn + 1) * (mn + 1) / 2 + (3 * me + 1) / 2 + cross;
    }
  }
  throw std::logic_error("m_after_projection: unknown scheme");
}

namespace {

Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace

std::vector<GrowthRow> growth_table(const Int& M, unsigned m, unsigned d, unsigned n) {
  if (n < 1) throw std::invalid_argument("growth_table: n >= 1 required");
  std::vector<GrowthRow> rows;
  rows.push_back({static_cast<int>(n), Int(m), Int(d), Int(m) * Int(d)});
  for (unsigned r = 1; r <= n - 1; ++r) {
    Int number;
    mpz_pow_ui(number.get_mpz_t(), M.get_mpz_t(), 1UL << (r - 1));
    Int degree = pow2((1UL << r) - 1) * pow_ui(Int(d), 1UL << r);
    rows.push_back({static_cast<int>(n - r), number, degree, number * degree});
  }
  // closing product row
  Int pn;
  mpz_pow_ui(pn.get_mpz_t(), M.get_mpz_t(), (1UL << (n - 1)) - 1);
  pn *= m;
  Int pd = pow2((1UL << n) - 1 - n) * pow_ui(Int(d), (1UL << n) - 1);
  Int pp = pow2((1UL << n) - n - 1) * pow_ui(Int(d), (1UL << n) - 1);
  {
    Int mm;
    mpz_pow_ui(mm.get_mpz_t(), M.get_mpz_t(), (1UL << (n - 1)) - 1);
    pp *= mm * m;
  }
  rows.push_back({0, pn, pd, pp});
  return rows;
}

Int dominant_cell_bound(const BoundScenario& sc) {
  Int M = m_after_projection(sc);
  Int Mp;
  mpz_pow_ui(Mp.get_mpz_t(), M.get_mpz_t(), (1UL << (sc.n - 1)) - 1);
  Int base = pow2((1UL << sc.n) - 1) * pow_ui(Int(sc.d), (1UL << sc.n) - 1) * Mp;
  Int tail(sc.m);
  if (sc.final_lift_reduction) {
    switch (sc.scheme) {
      case BoundScheme::SignInv: tail = Int(sc.m); break;
      case BoundScheme::Ec: tail = Int(1); break;
      case BoundScheme::TtiAllEc:
      case BoundScheme::EcImplicit: tail = Int(sc.t); break;
      case BoundScheme::TtiGeneral: tail = Int(sc.m_n) + Int(sc.e); break;
    }
  }
  return base * tail;
}

}  // namespace cad
