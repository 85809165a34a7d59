#include "doctest.h"
#include "cad/lifting.hpp"

using namespace cad;

namespace {

QffList load(const std::string& text) { return parse(text); }

const char* kPhi =
    "vars x, y;\n"
    "[ec] x^2+y^2-1 = 0 /\\ 4*x*y-1 < 0;\n"
    "[ec] (x-4)^2+(y-1)^2-1 = 0 /\\ 4*(x-4)*(y-1)-1 < 0;\n";

const char* kPsi =
    "vars x, y;\n"
    "[ec] x^2+y^2-1 = 0 /\\ 4*x*y-1 < 0;\n"
    "(x-4)^2+(y-1)^2-1 > 0 /\\ 4*(x-4)*(y-1)-1 < 0;\n";

const char* kPhi1 =
    "vars x, y;\n"
    "[ec] x^2+y^2-1 = 0 /\\ 4*x*y-1 < 0;\n";

}  // namespace

TEST_CASE("sign-invariant CAD of the unit circle has 13 cells") {
  QffList q = load("vars x, y;\n x^2+y^2-1 = 0;\n");
  auto out = build_cad(q, Scheme::Sign);
  REQUIRE(out.ok());
  CHECK(out.cad->level_counts == std::vector<size_t>{5, 13});
}

TEST_CASE("sign-invariant CAD of {f1, g1}: 83 cells over 15 base cells") {
  QffList q = load("vars x, y;\n x^2+y^2-1 = 0;\n 4*x*y-1 < 0;\n");
  auto out = build_cad(q, Scheme::Sign);
  REQUIRE(out.ok());
  CHECK(out.cad->level_counts == std::vector<size_t>{15, 83});
}

TEST_CASE("worked formula counts: tti 105/25, sign 317/41, merged 145/33") {
  QffList phi = load(kPhi);
  auto tti = build_cad(phi, Scheme::Tti);
  REQUIRE(tti.ok());
  CHECK(tti.cad->level_counts == std::vector<size_t>{25, 105});

  auto sign = build_cad(phi, Scheme::Sign);
  REQUIRE(sign.ok());
  CHECK(sign.cad->level_counts == std::vector<size_t>{41, 317});

  auto merged = build_cad(phi, Scheme::Ec);
  REQUIRE(merged.ok());
  CHECK(merged.cad->level_counts == std::vector<size_t>{33, 145});
}

TEST_CASE("second worked formula: tti 183 over 31") {
  QffList psi = load(kPsi);
  auto tti = build_cad(psi, Scheme::Tti);
  REQUIRE(tti.ok());
  CHECK(tti.cad->level_counts == std::vector<size_t>{31, 183});
}

TEST_CASE("single constraint formula: 53 cells over 13") {
  QffList q = load(kPhi1);
  auto out = ec_cad(q);
  REQUIRE(out.ok());
  CHECK(out.cad->level_counts == std::vector<size_t>{13, 53});
}

TEST_CASE("rescad scheme reproduces the tti decomposition for the worked input") {
  QffList phi = load(kPhi);
  auto rc = build_cad(phi, Scheme::Rescad);
  REQUIRE(rc.ok());
  CHECK(rc.cad->level_counts == std::vector<size_t>{25, 105});
}

TEST_CASE("truth table on the tti decomposition") {
  QffList phi = load(kPhi);
  auto out = build_cad(phi, Scheme::Tti);
  REQUIRE(out.ok());
  fill_truth(*out.cad, phi);
  size_t t1 = 0, t2 = 0, both = 0;
  for (const Cell* c : out.cad->leaves()) {
    REQUIRE(c->truth.has_value());
    if ((*c->truth)[0]) ++t1;
    if ((*c->truth)[1]) ++t2;
    if ((*c->truth)[0] && (*c->truth)[1]) ++both;
  }
  // the two clauses mirror each other around (2, 1/2); the circles are far
  // apart so no cell satisfies both
  CHECK(t1 == t2);
  CHECK(both == 0);
  // clause 1 holds on circle sections with 4xy < 1: the circle splits into
  // 20 section cells, 4 of which are the intersection points (4xy-1 = 0)
  // and 2 the arcs beyond them where 4xy > 1
  CHECK(t1 == 14);
}

TEST_CASE("cylindricity and determinism") {
  QffList phi = load(kPhi);
  auto a = build_cad(phi, Scheme::Tti);
  auto b = build_cad(phi, Scheme::Tti, LiftOptions{1});
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.cad->level_counts == b.cad->level_counts);
  auto la = a.cad->leaves();
  auto lb = b.cad->leaves();
  REQUIRE(la.size() == lb.size());
  for (size_t i = 0; i < la.size(); ++i) CHECK(la[i]->index == lb[i]->index);
  // stack samples strictly increase along each stack
  std::function<void(const Cell*)> walk = [&](const Cell* c) {
    for (size_t i = 0; i + 1 < c->kids.size(); ++i) {
      double x0 = c->kids[i]->sample.coord_double(c->level());
      double x1 = c->kids[i + 1]->sample.coord_double(c->level());
      CHECK(x0 <= x1);
    }
    for (const auto& k : c->kids) walk(k.get());
  };
  walk(a.cad->root.get());
}

TEST_CASE("stack_over on base sectors and sections") {
  QffList q = load(kPhi1);
  auto out = ec_cad(q);
  REQUIRE(out.ok());
  auto f1 = parse_poly("x^2+y^2-1", q.order);
  // x < -1 sector: no circle points
  Cell* first = out.cad->root->kids.front().get();
  Cell scratch;
  scratch.index = first->index;
  scratch.sample = first->sample;
  scratch.dim = first->dim;
  auto r = stack_over(scratch, PolySet({f1}), 1);
  REQUIRE(std::holds_alternative<std::vector<std::unique_ptr<Cell>>>(r));
  CHECK(std::get<0>(r).size() == 1);
  // -1 < x < 1 sector: full stack of 5
  Cell* mid = out.cad->root->kids[2].get();
  Cell scratch2;
  scratch2.index = mid->index;
  scratch2.sample = mid->sample;
  scratch2.dim = mid->dim;
  auto r2 = stack_over(scratch2, PolySet({f1}), 1);
  CHECK(std::get<0>(r2).size() == 5);
  // stack over x = 0 with the circle and hyperbola: 4xy-1 is constant there
  Cell scratch3;
  SamplePoint base;
  scratch3.index = {1};
  scratch3.sample = base.extended_with_rational(Rat(0));
  scratch3.dim = 1;
  auto g1 = parse_poly("4*x*y-1", q.order);
  auto r3 = stack_over(scratch3, PolySet({f1, g1}), 1);
  CHECK(std::get<0>(r3).size() == 5);
}

TEST_CASE("monotonicity of the worked example counts") {
  QffList phi = load(kPhi);
  size_t tti = build_cad(phi, Scheme::Tti).cad->leaf_count();
  size_t ec = build_cad(phi, Scheme::Ec).cad->leaf_count();
  size_t sign = build_cad(phi, Scheme::Sign).cad->leaf_count();
  CHECK(tti <= ec);
  CHECK(ec <= sign);
}

TEST_CASE("formula order inside clauses does not change the counts") {
  const char* flipped =
      "vars x, y;\n"
      "[ec] (x-4)^2+(y-1)^2-1 = 0 /\\ 4*(x-4)*(y-1)-1 < 0;\n"
      "[ec] x^2+y^2-1 = 0 /\\ 4*x*y-1 < 0;\n";
  QffList a = load(kPhi), b = load(flipped);
  CHECK(build_cad(a, Scheme::Tti).cad->level_counts == build_cad(b, Scheme::Tti).cad->level_counts);
}

TEST_CASE("positive-dimension nullification fails with a witness") {
  // z + y*w is nullified on the one-dimensional cell y = z = 0; with a
  // fifth variable on top this happens at an interior level where
  // order-invariance is required
  QffList q = load("vars x, y, z, w, v;\n z + y*w = 0 /\\ v > 0;\n");
  auto out = build_cad(q, Scheme::Sign);
  REQUIRE(!out.ok());
  CHECK(out.fail->phase == "cadw");
  CHECK(out.fail->level == 4);
  CHECK(out.fail->poly == parse_poly("z+y*w", q.order));

  // at the outermost lift the same input only needs sign-invariance, so the
  // vanishing polynomial is skipped instead
  QffList qtop = load("vars x, y, z, w;\n z + y*w = 0;\n");
  CHECK(build_cad(qtop, Scheme::Sign).ok());

  // final-lift failure of the tti scheme with a non-constant excluded set
  QffList q2 = load("vars x, y, z;\n [ec] (y-x^2)*(z+x) = 0 /\\ y*z-1 < 0;\n");
  auto out2 = build_cad(q2, Scheme::Tti);
  REQUIRE(!out2.ok());
  CHECK(out2.fail->phase == "tticad");
  CHECK(out2.fail->level == 3);
}

TEST_CASE("locate_leaf finds the cell of rational and algebraic points") {
  QffList phi = load(kPhi);
  auto out = build_cad(phi, Scheme::Tti);
  REQUIRE(out.ok());
  fill_truth(*out.cad, phi);
  SamplePoint base;
  SamplePoint p = base.extended_with_rational(Rat(0)).extended_with_rational(Rat(1));
  const Cell* c = locate_leaf(*out.cad, p);
  REQUIRE(c != nullptr);
  // (0,1) lies on the circle with 4xy-1 = -1 < 0: clause one true
  CHECK((*c->truth)[0]);
  CHECK_FALSE((*c->truth)[1]);
  SamplePoint far = base.extended_with_rational(Rat(10)).extended_with_rational(Rat(10));
  const Cell* c2 = locate_leaf(*out.cad, far);
  CHECK_FALSE((*c2->truth)[0]);
  CHECK_FALSE((*c2->truth)[1]);
}
