#include "doctest.h"
#include "resint/strata.hpp"

using namespace resint;

namespace {

Ideal ideal(const Ring& r, std::vector<std::string> g) { return Ideal::parse(r, g); }

struct Cone {
  Ring r{{"x", "y", "z", "t"}};
  Space space = Space::affine(r, ideal(r, {"x^2 - y^2 + t*z^2"}));
  Tower tower = Tower::build(space, {{"L", ideal(r, {"x", "y", "z"})}});
};

const Cone& cone() {
  static const Cone c;
  return c;
}

struct Closure {
  Ring h{{"S", "T", "X", "Y", "Z"}};
  Space space = Space::projective(h, ideal(h, {"S*X^2 - S*Y^2 + T*Z^2"}));
  Tower tower = Tower::build(space, {{"Sigma1", ideal(h, {"X", "Y", "Z"})},
                                     {"Sigma2", ideal(h, {"X - Y", "S", "Z"})},
                                     {"Sigma3", ideal(h, {"X + Y", "S", "Z"})}});
};

const Closure& closure() {
  static const Closure c;
  return c;
}

bool same_locus(const Space& s, const Ideal& a, const Ideal& b) { return s.subset(a, b) && s.subset(b, a); }

StrataConfig rules(std::set<Rule> r) {
  StrataConfig c;
  c.rules = std::move(r);
  return c;
}

}  // namespace

TEST_CASE("rule names round-trip") {
  for (Rule r : {Rule::Seed, Rule::BC1, Rule::BC2, Rule::BC3, Rule::AC, Rule::Curve, Rule::Fourfold, Rule::Manual}) {
    CHECK(parse_rule(rule_name(r)) == r);
  }
  CHECK_FALSE(parse_rule("BC4").has_value());
}

TEST_CASE("coarse and fine affine stratifications") {
  const Cone& c = cone();
  Ideal line = ideal(c.r, {"x", "y", "z"});
  Ideal origin = ideal(c.r, {"x", "y", "z", "t"});

  Stratification coarse = assemble_stratification(c.tower, rules({Rule::BC1}));
  CHECK(same_locus(c.space, coarse.level(1), line));
  CHECK(same_locus(c.space, coarse.level(2), line));
  CHECK(c.space.is_empty(coarse.level(3)));

  Stratification fine = assemble_stratification(c.tower, rules({Rule::BC1, Rule::BC2}));
  CHECK(same_locus(c.space, fine.level(2), line));
  CHECK(fine.level(3) == origin);
  bool bc2 = false;
  for (const auto& p : fine.pieces()) bc2 = bc2 || (p.rule == Rule::BC2 && p.codim == 3);
  CHECK(bc2);

  Stratification ac = assemble_stratification(c.tower, rules({Rule::BC1, Rule::AC}));
  CHECK(ac.level(3) == origin);

  Stratification curve = assemble_stratification(c.tower, rules({Rule::Curve}));
  CHECK(same_locus(c.space, curve.level(2), line));
  CHECK(curve.level(3) == origin);

  CHECK_THROWS_AS(assemble_stratification(c.tower, rules({Rule::Fourfold})), Error);
}

TEST_CASE("identity tower contributes nothing beyond the seed") {
  const Cone& c = cone();
  Tower id = Tower::build(c.space, {});
  CHECK(fiber_dimension_strata(id).empty());
  CHECK(reducible_fiber_loci(id, Rule::AC).empty());
  Stratification s = assemble_stratification(id, rules({Rule::BC1, Rule::BC2, Rule::BC3, Rule::AC}));
  REQUIRE(s.pieces().size() == 1);
  CHECK(s.pieces()[0].rule == Rule::Seed);
}

TEST_CASE("nesting, codimension and monotonicity") {
  const Cone& c = cone();
  std::vector<std::set<Rule>> configs = {{}, {Rule::BC1}, {Rule::BC1, Rule::BC2}, {Rule::BC1, Rule::BC2, Rule::BC3, Rule::AC}};
  std::vector<Stratification> built;
  for (const auto& r : configs) built.push_back(assemble_stratification(c.tower, rules(r)));
  for (const auto& s : built) {
    for (int i = 1; i <= 3; ++i) {
      Ideal li = s.level(i), next = s.level(i + 1);
      if (!c.space.is_empty(next)) {
        for (const auto& g : li.generators()) CHECK(radical_contains(next, g));
      }
      auto dim = c.space.dimension_of(li);
      if (dim) CHECK(*dim <= 3 - i);
    }
  }
  for (std::size_t k = 0; k + 1 < built.size(); ++k) {
    for (int i = 1; i <= 3; ++i) {
      if (c.space.is_empty(built[k].level(i))) continue;
      CHECK(c.space.subset(built[k].level(i), built[k + 1].level(i)));
    }
  }
}

TEST_CASE("refinement") {
  const Cone& c = cone();
  Stratification coarse = assemble_stratification(c.tower, rules({Rule::BC1}));
  Stratification fine = assemble_stratification(c.tower, rules({Rule::BC1, Rule::BC2}));
  Stratification same = refine_stratifications(fine, fine);
  CHECK(same.pieces().size() == fine.pieces().size());
  Stratification both = refine_stratifications(coarse, fine);
  for (int i = 1; i <= 4; ++i) CHECK(both.level(i) == fine.level(i));

  StrataConfig p, q;
  p.manual.push_back({3, ideal(c.r, {"x", "y", "z", "t"})});
  q.manual.push_back({3, ideal(c.r, {"x", "y", "z", "t - 1"})});
  Tower id = Tower::build(c.space, {});
  Stratification sp = assemble_stratification(id, p), sq = assemble_stratification(id, q);
  Stratification pq = refine_stratifications(sp, sq);
  CHECK(pq.level(3) == intersect(ideal(c.r, {"x", "y", "z", "t"}), ideal(c.r, {"x", "y", "z", "t - 1"})));

  StrataConfig bad;
  bad.manual.push_back({5, ideal(c.r, {"x", "y", "z", "t"})});
  CHECK_THROWS_AS(assemble_stratification(id, bad), Error);
  StrataConfig too_big;
  too_big.manual.push_back({3, ideal(c.r, {"x", "y"})});
  CHECK_THROWS_AS(assemble_stratification(id, too_big), Error);
}

TEST_CASE("singular points of center images") {
  Ring r({"x", "y", "z"});
  Space plane = Space::affine(r, Ideal(r));
  Ideal nodal = ideal(r, {"z", "y^2 - x^2*(x + 1)"});
  CHECK(jacobian_singular_locus(plane, nodal) == ideal(r, {"x", "y", "z"}));
  CHECK(plane.is_empty(jacobian_singular_locus(plane, ideal(r, {"z", "y - x^2"}))));

  Ring h({"X", "Y", "Z"});
  Space p2 = Space::projective(h, Ideal(h));
  Ideal cubic = ideal(h, {"Z*Y^2 - X^2*(X + Z)"});
  Ideal sing = jacobian_singular_locus(p2, cubic);
  CHECK(p2.subset(sing, ideal(h, {"X", "Y"})));
  CHECK_FALSE(p2.is_empty(sing));
}

TEST_CASE("projective closure stratification") {
  const Closure& c = closure();
  Stratification s = assemble_stratification(c.tower, rules({Rule::BC1, Rule::BC2, Rule::BC3}));
  Ideal sigma = c.space.union_of(
      {ideal(c.h, {"X", "Y", "Z"}), ideal(c.h, {"X - Y", "S", "Z"}), ideal(c.h, {"X + Y", "S", "Z"})});
  CHECK(c.space.subset(s.level(2), sigma));
  CHECK(c.space.subset(sigma, s.level(2)));
  Ideal x3 = s.level(3);
  CHECK(c.space.subset(ideal(c.h, {"S", "X", "Y", "Z"}), x3));
  CHECK(c.space.subset(ideal(c.h, {"T", "X", "Y", "Z"}), x3));
  CHECK(c.space.dimension_of(x3) == 0);

  Stratification curve = assemble_stratification(c.tower, rules({Rule::Curve}));
  CHECK(c.space.subset(ideal(c.h, {"S", "X", "Y", "Z"}), curve.level(3)));
}

TEST_CASE("conic fibers of the cone blowup") {
  Ring r({"x", "y", "z", "t"});
  Space cone = Space::affine(r, Ideal::parse(r, {"x^2 - y^2 + t*z^2"}));
  Tower t = Tower::build(cone, {{"L", Ideal::parse(r, {"x", "y", "z"})}});
  ConicFibers f = conic_fibers(t, 0);
  CHECK(f.generic_irreducible);
  CHECK_FALSE(f.charts.empty());
  REQUIRE(f.degenerate_loci.size() == 1);
  CHECK(f.degenerate_loci[0] == Ideal::parse(r, {"x", "y", "z", "t"}));
  REQUIRE(f.points.size() == 1);
  for (const auto& p : f.points) {
    CHECK(p.reducible());
    CHECK(p.factors.size() == 2);
  }
}
