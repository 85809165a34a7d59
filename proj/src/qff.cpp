#include "cad/qff.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "cad/realalg.hpp"

namespace cad {

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
  }
  return "?";
}

bool rel_holds(Rel r, int s) {
  switch (r) {
    case Rel::Eq: return s == 0;
    case Rel::Ne: return s != 0;
    case Rel::Lt: return s < 0;
    case Rel::Gt: return s > 0;
    case Rel::Le: return s <= 0;
    case Rel::Ge: return s >= 0;
  }
  return false;
}

PolySet Qff::polys() const {
  PolySet out;
  for (const auto& a : atoms) out.insert(a.poly);
  return out;
}

namespace {

void node_str(const Qff& q, const QffNode& n, std::ostringstream& os, const Qff* ec_owner) {
  switch (n.kind) {
    case QffNode::Kind::Atom:
      if (ec_owner && ec_owner->designated_ec && *ec_owner->designated_ec == n.atom) os << "[ec] ";
      os << q.atoms[n.atom].poly.str() << " " << rel_str(q.atoms[n.atom].rel) << " 0";
      break;
    case QffNode::Kind::Not:
      os << "~(";
      node_str(q, n.kids[0], os, ec_owner);
      os << ")";
      break;
    case QffNode::Kind::And:
    case QffNode::Kind::Or:
    case QffNode::Kind::Imp: {
      const char* op = n.kind == QffNode::Kind::And ? " /\\ " : n.kind == QffNode::Kind::Or ? " \\/ " : " -> ";
      os << "(";
      node_str(q, n.kids[0], os, ec_owner);
      os << op;
      node_str(q, n.kids[1], os, ec_owner);
      os << ")";
      break;
    }
  }
}

}  // namespace

std::string Qff::str(const VarOrderPtr&) const {
  std::ostringstream os;
  node_str(*this, root, os, this);
  return os.str();
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident, Number, Plus, Minus, Star, Caret, Slash, LParen, RParen,
  Eq, Ne, Lt, Gt, Le, Ge, And, Or, Not, Imp, Comma, Semi, EcMark, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), line, col}); };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    int startcol = col;
    auto advance = [&](size_t n) { i += n; col += static_cast<int>(n); };
    auto push_at = [&](Tok k, std::string t) { out.push_back({k, std::move(t), line, startcol}); };
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push_at(Tok::Ident, s.substr(i, j - i));
      advance(j - i);
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
      push_at(Tok::Number, s.substr(i, j - i));
      advance(j - i);
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "/\\") { push_at(Tok::And, two); advance(2); continue; }
    if (two == "\\/") { push_at(Tok::Or, two); advance(2); continue; }
    if (two == "->") { push_at(Tok::Imp, two); advance(2); continue; }
    if (two == "<=") { push_at(Tok::Le, two); advance(2); continue; }
    if (two == ">=") { push_at(Tok::Ge, two); advance(2); continue; }
    if (two == "!=") { push_at(Tok::Ne, two); advance(2); continue; }
    if (s.compare(i, 4, "[ec]") == 0) { push_at(Tok::EcMark, "[ec]"); advance(4); continue; }
    switch (c) {
      case '+': push_at(Tok::Plus, "+"); advance(1); continue;
      case '-': push_at(Tok::Minus, "-"); advance(1); continue;
      case '*': push_at(Tok::Star, "*"); advance(1); continue;
      case '^': push_at(Tok::Caret, "^"); advance(1); continue;
      case '/': push_at(Tok::Slash, "/"); advance(1); continue;
      case '(': push_at(Tok::LParen, "("); advance(1); continue;
      case ')': push_at(Tok::RParen, ")"); advance(1); continue;
      case '=': push_at(Tok::Eq, "="); advance(1); continue;
      case '<': push_at(Tok::Lt, "<"); advance(1); continue;
      case '>': push_at(Tok::Gt, ">"); advance(1); continue;
      case '~': push_at(Tok::Not, "~"); advance(1); continue;
      case ',': push_at(Tok::Comma, ","); advance(1); continue;
      case ';': push_at(Tok::Semi, ";"); advance(1); continue;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, startcol);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Polynomial with rational coefficients, used only while parsing.
struct RatPoly {
  VarOrderPtr ord;
  std::vector<std::pair<Expo, Rat>> terms;  // unsorted, may have duplicates

  static RatPoly constant(VarOrderPtr o, Rat v) {
    RatPoly p{std::move(o), {}};
    if (sgn_of(v) != 0) p.terms.push_back({Expo(p.ord->size(), 0), std::move(v)});
    return p;
  }
  static RatPoly var(VarOrderPtr o, size_t idx) {
    Expo e(o->size(), 0);
    e[idx] = 1;
    RatPoly p{std::move(o), {}};
    p.terms.push_back({std::move(e), Rat(1)});
    return p;
  }
  RatPoly operator+(const RatPoly& o) const {
    RatPoly r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
  RatPoly operator-() const {
    RatPoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  RatPoly operator*(const RatPoly& o) const {
    RatPoly r{ord, {}};
    for (const auto& [ea, ca] : terms)
      for (const auto& [eb, cb] : o.terms) {
        Expo e(ea.size());
        for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        r.terms.push_back({std::move(e), ca * cb});
      }
    return r;
  }
  RatPoly pow(unsigned n) const {
    RatPoly r = constant(ord, 1);
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
  }
  // Clear denominators with a positive factor.
  Polynomial cleared() const {
    Int den = 1;
    for (const auto& [e, c] : terms) {
      Int d = c.get_den();
      den = den / gcd_int(den, d) * d;
    }
    std::vector<std::pair<Expo, Int>> t;
    for (const auto& [e, c] : terms) t.push_back({e, Int(c.get_num() * (den / c.get_den()))});
    return Polynomial(ord, std::move(t));
  }
};

class Parser {
 public:
  Parser(std::vector<Token> toks, VarOrderPtr ord) : toks_(std::move(toks)), ord_(std::move(ord)) {}

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) throw ParseError("expected " + what, peek().line, peek().col);
  }
  size_t save() const { return pos_; }
  void restore(size_t p) { pos_ = p; }

  RatPoly parse_expr() {
    RatPoly r = parse_term();
    while (true) {
      if (accept(Tok::Plus))
        r = r + parse_term();
      else if (accept(Tok::Minus))
        r = r + (-parse_term());
      else
        return r;
    }
  }

  RatPoly parse_term() {
    RatPoly r = parse_factor();
    while (accept(Tok::Star)) r = r * parse_factor();
    return r;
  }

  RatPoly parse_factor() {
    RatPoly b = parse_base();
    if (accept(Tok::Caret)) {
      const Token& t = peek();
      if (t.kind != Tok::Number) throw ParseError("expected integer exponent", t.line, t.col);
      unsigned e = static_cast<unsigned>(std::stoul(take().text));
      return b.pow(e);
    }
    return b;
  }

  RatPoly parse_base() {
    const Token& t = peek();
    if (t.kind == Tok::Minus) {
      take();
      return -parse_factor();
    }
    if (t.kind == Tok::LParen) {
      take();
      RatPoly r = parse_expr();
      expect(Tok::RParen, "')'");
      return r;
    }
    if (t.kind == Tok::Ident) {
      auto idx = ord_->index_of(t.text);
      if (!idx) throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
      take();
      return RatPoly::var(ord_, *idx);
    }
    if (t.kind == Tok::Number) {
      Int num(take().text);
      if (accept(Tok::Slash)) {
        const Token& d = peek();
        if (d.kind != Tok::Number) throw ParseError("expected denominator", d.line, d.col);
        Int den(take().text);
        if (sgn_of(den) == 0) throw ParseError("zero denominator", d.line, d.col);
        Rat q(num);
        q /= Rat(den);
        return RatPoly::constant(ord_, q);
      }
      return RatPoly::constant(ord_, Rat(num));
    }
    throw ParseError("expected polynomial", t.line, t.col);
  }

  std::optional<Rel> peek_rel() {
    switch (peek().kind) {
      case Tok::Eq: return Rel::Eq;
      case Tok::Ne: return Rel::Ne;
      case Tok::Lt: return Rel::Lt;
      case Tok::Gt: return Rel::Gt;
      case Tok::Le: return Rel::Le;
      case Tok::Ge: return Rel::Ge;
      default: return std::nullopt;
    }
  }

  // atom := ["[ec]"] poly REL poly
  std::optional<QffNode> try_atom(Qff& q) {
    size_t mark = save();
    bool ec = accept(Tok::EcMark);
    const Token& at = peek();
    RatPoly lhs{ord_, {}};
    try {
      lhs = parse_expr();
    } catch (const ParseError&) {
      restore(mark);
      return std::nullopt;
    }
    auto rel = peek_rel();
    if (!rel) {
      restore(mark);
      return std::nullopt;
    }
    take();
    RatPoly rhs = parse_expr();
    Polynomial p = (lhs + (-rhs)).cleared().canonical();
    if (p.is_constant()) throw ParseError("atom polynomial is constant", at.line, at.col);
    if (ec) {
      if (*rel != Rel::Eq) throw ParseError("[ec] marker requires an equality atom", at.line, at.col);
      if (q.designated_ec) throw ParseError("at most one [ec] marker per formula", at.line, at.col);
      q.designated_ec = q.atoms.size();
    }
    QffNode n;
    n.kind = QffNode::Kind::Atom;
    n.atom = q.atoms.size();
    q.atoms.push_back({std::move(p), *rel});
    return n;
  }

  QffNode parse_formula(Qff& q) { return parse_imp(q); }

  QffNode parse_imp(Qff& q) {
    QffNode l = parse_or(q);
    if (accept(Tok::Imp)) {
      QffNode r = parse_imp(q);
      QffNode n;
      n.kind = QffNode::Kind::Imp;
      n.kids = {std::move(l), std::move(r)};
      return n;
    }
    return l;
  }

  QffNode parse_or(Qff& q) {
    QffNode l = parse_and(q);
    while (accept(Tok::Or)) {
      QffNode r = parse_and(q);
      QffNode n;
      n.kind = QffNode::Kind::Or;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  QffNode parse_and(Qff& q) {
    QffNode l = parse_unary(q);
    while (accept(Tok::And)) {
      QffNode r = parse_unary(q);
      QffNode n;
      n.kind = QffNode::Kind::And;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  QffNode parse_unary(Qff& q) {
    if (accept(Tok::Not)) {
      QffNode n;
      n.kind = QffNode::Kind::Not;
      n.kids = {parse_unary(q)};
      return n;
    }
    if (auto a = try_atom(q)) return std::move(*a);
    if (accept(Tok::LParen)) {
      QffNode n = parse_formula(q);
      expect(Tok::RParen, "')'");
      return n;
    }
    throw ParseError("expected atom or '('", peek().line, peek().col);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  VarOrderPtr ord_;
};

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  auto toks = lex(text);
  size_t pos = 0;
  auto peek = [&]() -> const Token& { return toks[pos]; };
  auto take = [&]() -> Token { return toks[pos++]; };

  if (peek().kind != Tok::Ident || peek().text != "vars")
    throw ParseError("expected 'vars' declaration", peek().line, peek().col);
  take();
  std::vector<std::string> names;
  while (true) {
    if (peek().kind != Tok::Ident) throw ParseError("expected variable name", peek().line, peek().col);
    names.push_back(take().text);
    if (peek().kind == Tok::Comma) {
      take();
      continue;
    }
    break;
  }
  if (peek().kind != Tok::Semi) throw ParseError("expected ';' after vars", peek().line, peek().col);
  take();

  ProblemFile pf;
  pf.qffs.order = std::make_shared<VarOrder>(names);

  while (peek().kind != Tok::End) {
    if (peek().kind == Tok::Ident && peek().text == "option") {
      take();
      if (peek().kind != Tok::Ident) throw ParseError("expected option name", peek().line, peek().col);
      std::string key = take().text;
      std::vector<std::string> vals;
      while (peek().kind == Tok::Ident || peek().kind == Tok::Number) vals.push_back(take().text);
      if (peek().kind != Tok::Semi) throw ParseError("expected ';' after option", peek().line, peek().col);
      take();
      pf.options[key] = std::move(vals);
      continue;
    }
    Parser fp(std::vector<Token>(toks.begin() + pos, toks.end()), pf.qffs.order);
    Qff q;
    q.root = fp.parse_formula(q);
    pos += fp.save();
    if (peek().kind != Tok::Semi) throw ParseError("expected ';' after formula", peek().line, peek().col);
    take();
    pf.qffs.formulae.push_back(std::move(q));
  }
  if (pf.qffs.formulae.empty())
    throw ParseError("no formulae", peek().line, peek().col);
  return pf;
}

QffList parse(const std::string& text) { return parse_problem(text).qffs; }

Polynomial parse_poly(const std::string& text, const VarOrderPtr& order) {
  Parser p(lex(text), order);
  RatPoly r = p.parse_expr();
  if (p.peek().kind != Tok::End) throw ParseError("trailing input after polynomial", p.peek().line, p.peek().col);
  return r.cleared();
}

namespace {

bool eval_node(const Qff& q, const QffNode& n, const std::map<Polynomial, int>& signs) {
  switch (n.kind) {
    case QffNode::Kind::Atom: {
      const Atom& a = q.atoms[n.atom];
      auto it = signs.find(a.poly.canonical());
      if (it == signs.end()) throw std::invalid_argument("eval_truth: missing sign for " + a.poly.str());
      int s = it->second;
      // the canonical form may flip the sign of the polynomial
      if (sgn_of(a.poly.terms().front().second) < 0) s = -s;
      return rel_holds(a.rel, s);
    }
    case QffNode::Kind::Not: return !eval_node(q, n.kids[0], signs);
    case QffNode::Kind::And: return eval_node(q, n.kids[0], signs) && eval_node(q, n.kids[1], signs);
    case QffNode::Kind::Or: return eval_node(q, n.kids[0], signs) || eval_node(q, n.kids[1], signs);
    case QffNode::Kind::Imp: return !eval_node(q, n.kids[0], signs) || eval_node(q, n.kids[1], signs);
  }
  return false;
}

}  // namespace

bool eval_truth(const Qff& q, const std::map<Polynomial, int>& signs) {
  return eval_node(q, q.root, signs);
}

ProjectionInput derive_projection_input(const QffList& q) {
  ProjectionInput in;
  in.order = q.order;
  for (const auto& f : q.formulae) {
    PolySet A = f.polys();
    PolySet E;
    if (f.designated_ec)
      E.insert(f.atoms[*f.designated_ec].poly);
    else
      E = A;
    in.A_list.push_back(std::move(A));
    in.E_list.push_back(std::move(E));
  }
  return in;
}

// ---------------------------------------------------------------------------
// Heuristics
// ---------------------------------------------------------------------------

namespace {

struct BrownTriple {
  int var_degree = 0;   // highest degree of the variable in any input poly
  int term_degree = 0;  // highest total degree of a term containing it
  int term_count = 0;   // number of terms containing it

  auto tie() const { return std::tie(var_degree, term_degree, term_count); }
};

std::vector<BrownTriple> brown_triples(const QffList& q) {
  size_t n = q.order->size();
  std::vector<BrownTriple> t(n);
  for (const auto& f : q.formulae)
    for (const auto& a : f.atoms)
      for (const auto& [e, c] : a.poly.terms()) {
        int td = 0;
        for (unsigned x : e) td += static_cast<int>(x);
        for (size_t v = 0; v < n; ++v) {
          if (e[v] == 0) continue;
          t[v].var_degree = std::max(t[v].var_degree, static_cast<int>(e[v]));
          t[v].term_degree = std::max(t[v].term_degree, td);
          t[v].term_count += 1;
        }
      }
  return t;
}

}  // namespace

std::vector<VarOrderPtr> brown_order(const QffList& q) {
  size_t n = q.order->size();
  auto triples = brown_triples(q);
  std::vector<std::vector<size_t>> perms;
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  do {
    perms.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  // score: triples of the projected-first (highest) variable first
  auto score = [&](const std::vector<size_t>& p) {
    std::vector<std::tuple<int, int, int>> s;
    for (size_t i = p.size(); i-- > 0;) s.push_back(triples[p[i]].tie());
    return s;
  };
  std::stable_sort(perms.begin(), perms.end(),
                   [&](const auto& a, const auto& b) { return score(a) < score(b); });
  std::vector<VarOrderPtr> out;
  for (const auto& p : perms) {
    std::vector<std::string> names;
    for (size_t i : p) names.push_back(q.order->name(i));
    out.push_back(std::make_shared<VarOrder>(std::move(names)));
  }
  return out;
}

long sotd(const std::vector<PolySet>& levels) {
  long acc = 0;
  for (const auto& s : levels)
    for (const auto& p : s)
      for (const auto& [e, c] : p.terms())
        for (unsigned x : e) acc += static_cast<long>(x);
  return acc;
}

int ndrr(const PolySet& univariate) {
  std::vector<RealAlgebraicNumber> all;
  for (const auto& p : univariate) {
    auto used = p.vars_used();
    if (used.size() != 1) throw std::invalid_argument("ndrr: polynomial not univariate: " + p.str());
    for (auto& r : isolate_roots(p.to_upoly(used[0]))) all.push_back(std::move(r));
  }
  std::sort(all.begin(), all.end(), [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
    return compare(a, b) < 0;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const RealAlgebraicNumber& a, const RealAlgebraicNumber& b) {
                          return compare(a, b) == 0;
                        }),
            all.end());
  return static_cast<int>(all.size());
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Sign: return "sign";
    case Scheme::Ec: return "ec";
    case Scheme::Tti: return "tti";
    case Scheme::Rescad: return "rescad";
  }
  return "?";
}

std::vector<PolySet> projection_levels(const QffList& q, Scheme scheme) {
  size_t n = q.order->size();
  std::vector<PolySet> levels(n);
  ProjectionInput in = derive_projection_input(q);
  PolySet everything;
  for (const auto& A : in.A_list) everything.insert_all(A);
  levels[n - 1] = everything;
  if (n == 1) return levels;
  PolySet below;
  switch (scheme) {
    case Scheme::Sign:
      below = proj_full(everything, n - 1).polys;
      break;
    case Scheme::Tti:
      below = proj_tti(in, n - 1).polys;
      break;
    case Scheme::Ec: {
      QffList merged = merged_product_ec(q);
      ProjectionInput min = derive_projection_input(merged);
      below = proj_tti(min, n - 1).polys;
      break;
    }
    case Scheme::Rescad:
      below = proj_full(rescad_set(in), n - 1).polys;
      break;
  }
  for (size_t v = n - 1; v-- > 0;) {
    levels[v] = below;
    if (v > 0) below = proj_full(below, v).polys;
  }
  return levels;
}

namespace {

void explicit_eq_conjuncts(const Qff& q, const QffNode& n, std::vector<size_t>& out) {
  if (n.kind == QffNode::Kind::And) {
    explicit_eq_conjuncts(q, n.kids[0], out);
    explicit_eq_conjuncts(q, n.kids[1], out);
    return;
  }
  if (n.kind == QffNode::Kind::Atom && q.atoms[n.atom].rel == Rel::Eq) out.push_back(n.atom);
}

}  // namespace

std::vector<QffList> ec_designation_candidates(const QffList& q, size_t cap) {
  std::vector<std::vector<std::optional<size_t>>> choices;
  for (const auto& f : q.formulae) {
    std::vector<size_t> eqs;
    explicit_eq_conjuncts(f, f.root, eqs);
    std::vector<std::optional<size_t>> c;
    if (eqs.empty())
      c.push_back(std::nullopt);
    else
      for (size_t a : eqs) c.push_back(a);
    choices.push_back(std::move(c));
  }
  std::vector<QffList> out;
  std::vector<size_t> pick(choices.size(), 0);
  while (true) {
    QffList cand;
    cand.order = q.order;
    for (size_t i = 0; i < q.formulae.size(); ++i) {
      Qff f = q.formulae[i];
      f.designated_ec = choices[i][pick[i]];
      cand.formulae.push_back(std::move(f));
    }
    out.push_back(std::move(cand));
    if (out.size() >= cap) throw std::invalid_argument("ec_designation_candidates: candidate cap exceeded");
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return out;
}

QffList merged_product_ec(const QffList& q) {
  if (q.formulae.size() == 1 && q.formulae[0].designated_ec) return q;
  Qff merged;
  Polynomial prod = Polynomial::constant(q.order, 1);
  for (const auto& f : q.formulae) {
    if (!f.designated_ec)
      throw std::invalid_argument("merged_product_ec: every formula needs a designated constraint");
    prod = prod * f.atoms[*f.designated_ec].poly;
  }
  merged.atoms.push_back({prod.canonical(), Rel::Eq});
  merged.designated_ec = 0;
  QffNode ec_node;
  ec_node.kind = QffNode::Kind::Atom;
  ec_node.atom = 0;
  // body: disjunction of the original formulae, atoms re-indexed
  std::optional<QffNode> body;
  for (const auto& f : q.formulae) {
    size_t base = merged.atoms.size();
    for (const auto& a : f.atoms) merged.atoms.push_back(a);
    // deep-copy the node tree with shifted atom indices
    std::function<QffNode(const QffNode&)> shift = [&](const QffNode& n) {
      QffNode m = n;
      if (m.kind == QffNode::Kind::Atom) m.atom += base;
      m.kids.clear();
      for (const auto& k : n.kids) m.kids.push_back(shift(k));
      return m;
    };
    QffNode nf = shift(f.root);
    if (!body)
      body = std::move(nf);
    else {
      QffNode orn;
      orn.kind = QffNode::Kind::Or;
      orn.kids = {std::move(*body), std::move(nf)};
      body = std::move(orn);
    }
  }
  QffNode root;
  root.kind = QffNode::Kind::And;
  root.kids = {std::move(ec_node), std::move(*body)};
  merged.root = std::move(root);
  QffList out;
  out.order = q.order;
  out.formulae.push_back(std::move(merged));
  return out;
}

namespace {

QffList family(unsigned j, bool psi) {
  if (j < 1) throw std::invalid_argument("family: j must be >= 1");
  auto ord = std::make_shared<VarOrder>(std::vector<std::string>{"x", "y"});
  QffList out;
  out.order = ord;
  Polynomial x = Polynomial::variable(ord, 0);
  Polynomial y = Polynomial::variable(ord, 1);
  Polynomial one = Polynomial::constant(ord, 1);
  for (unsigned k = 0; k < j; ++k) {
    Polynomial xs = x - Polynomial::constant(ord, Int(4L * k));
    Polynomial ys = y - Polynomial::constant(ord, Int(static_cast<long>(k)));
    Polynomial f = xs * xs + ys * ys - one;                 // circle
    Polynomial g = (xs * ys * Int(4) - one).canonical();    // hyperbola, cleared
    Qff q;
    bool last_psi = psi && k + 1 == j;
    q.atoms.push_back({f.canonical(), last_psi ? Rel::Lt : Rel::Eq});
    q.atoms.push_back({g, Rel::Lt});
    if (!last_psi) q.designated_ec = 0;
    QffNode a0;
    a0.kind = QffNode::Kind::Atom;
    a0.atom = 0;
    QffNode a1;
    a1.kind = QffNode::Kind::Atom;
    a1.atom = 1;
    QffNode andn;
    andn.kind = QffNode::Kind::And;
    andn.kids = {std::move(a0), std::move(a1)};
    q.root = std::move(andn);
    out.formulae.push_back(std::move(q));
  }
  return out;
}

}  // namespace

QffList family_phi(unsigned j) { return family(j, false); }
QffList family_psi(unsigned j) { return family(j, true); }

QffList reorder_qffs(const QffList& q, const VarOrderPtr& target) {
  QffList out;
  out.order = target;
  for (const auto& f : q.formulae) {
    Qff nf = f;
    for (auto& a : nf.atoms) a.poly = a.poly.reordered(target);
    out.formulae.push_back(std::move(nf));
  }
  return out;
}

}  // namespace cad
