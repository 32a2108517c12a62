#include <random>

#include "doctest.h"
#include "resint/cycles.hpp"

using namespace resint;

namespace {

Ideal ideal(const Ring& r, std::vector<std::string> g) { return Ideal::parse(r, g); }

struct Cone {
  Ring r{{"x", "y", "z", "t"}};
  Space space = Space::affine(r, ideal(r, {"x^2 - y^2 + t*z^2"}));
  Tower tower = Tower::build(space, {{"L", ideal(r, {"x", "y", "z"})}});
  Stratification coarse = assemble_stratification(tower, rules({Rule::BC1}));
  Stratification fine = assemble_stratification(tower, rules({Rule::BC1, Rule::BC2}));
  Cycle d = make_cycle(space, "D", ideal(r, {"x + y", "t"}));
  Cycle a0 = make_cycle(space, "alpha0", ideal(r, {"x - y", "t", "z"}));
  Cycle a1 = make_cycle(space, "alpha1", ideal(r, {"x - y", "t - 1", "z"}));
  CycleFamily fam = make_family(space, "A", "l", {"x - y", "z", "t - l"}, {0, 1}, 1);

  static StrataConfig rules(std::set<Rule> r) {
    StrataConfig c;
    c.rules = std::move(r);
    return c;
  }
};

const Cone& cone() {
  static const Cone c;
  return c;
}

bool same(const Space& s, const Ideal& a, const Ideal& b) { return s.subset(a, b) && s.subset(b, a); }

}  // namespace

TEST_CASE("perversity sequences") {
  CHECK(Perversity::parse("(0,1,1)").p == std::vector<int>{0, 1, 1});
  CHECK(Perversity::parse("0, 0, 1").is_standard());
  CHECK_FALSE(Perversity::parse("1,1,1").is_standard());
  CHECK_FALSE(Perversity::parse("0,2,2").is_standard());
  CHECK(Perversity::top(4).to_string() == "(0,1,2,3)");
  CHECK(Perversity::zero(3) + Perversity::top(3) == Perversity::top(3));
  CHECK(Perversity::zero(3) <= Perversity::parse("0,1,1"));
  CHECK_FALSE(Perversity::parse("0,1,1") <= Perversity::parse("0,0,1"));
  CHECK_THROWS_AS(Perversity::parse("0,a"), Error);
}

TEST_CASE("perversity checks on the cone") {
  const Cone& c = cone();
  auto dr = perversity_check(c.d, c.coarse, Perversity::zero(3));
  CHECK(dr.r == 2);
  CHECK(dr.pass);
  CHECK(dr.levels[1].dim == 0);
  CHECK(dr.levels[1].bound == 0);

  Perversity one = Perversity::parse("1,1,1");
  auto coarse0 = perversity_check(c.a0, c.coarse, one);
  CHECK(coarse0.pass);
  CHECK(coarse0.nonstandard);
  auto fine0 = perversity_check(c.a0, c.fine, one);
  CHECK_FALSE(fine0.pass);
  CHECK(fine0.levels[2].dim == 0);
  CHECK(fine0.levels[2].bound == -1);

  Ring r2({"x", "y"});
  Space plane = Space::affine(r2, Ideal(r2));
  Stratification trivial = assemble_stratification(Tower::build(plane, {}), {});
  Cycle line = make_cycle(plane, "l", ideal(r2, {"x"}));
  for (const auto& p : {"0,0", "0,1"}) CHECK(perversity_check(line, trivial, Perversity::parse(p)).pass);
  CHECK_THROWS_AS(perversity_check(line, trivial, Perversity::zero(3)), Error);
}

TEST_CASE("minimal perversity") {
  const Cone& c = cone();
  CHECK(minimal_perversity(c.d, c.fine) == Perversity::parse("0,0,1"));
  CHECK(minimal_perversity(c.d, c.coarse) == Perversity::zero(3));
  Cycle away = make_cycle(c.space, "away", ideal(c.r, {"x - 1", "y - 1", "z"}));
  CHECK(minimal_perversity(away, c.fine) == Perversity::zero(3));
  Cycle inside = make_cycle(c.space, "L", ideal(c.r, {"x", "y", "z"}));
  CHECK_FALSE(minimal_perversity(inside, c.fine).has_value());
}

TEST_CASE("perversity checks are monotone") {
  const Cone& c = cone();
  std::vector<Perversity> all;
  for (int a = 0; a <= 1; ++a) {
    for (int b = a; b <= a + 1; ++b) all.push_back({{0, a, b}});
  }
  all.push_back(Perversity::parse("1,1,1"));
  for (const Cycle* cyc : {&c.d, &c.a0, &c.a1}) {
    for (const auto& p : all) {
      for (const auto& q : all) {
        if (!(p <= q)) continue;
        for (const Stratification* s : {&c.coarse, &c.fine}) {
          if (perversity_check(*cyc, *s, p).pass) CHECK(perversity_check(*cyc, *s, q).pass);
        }
      }
    }
    // The fine stratification contains the coarse one level by level.
    for (const auto& p : all) {
      auto coarse = perversity_check(*cyc, c.coarse, p);
      auto fine = perversity_check(*cyc, c.fine, p);
      for (std::size_t i = 0; i < coarse.levels.size(); ++i) {
        if (!coarse.levels[i].pass) CHECK_FALSE(fine.levels[i].pass);
      }
    }
  }
}

TEST_CASE("family fibers") {
  const Cone& c = cone();
  Cycle f0 = family_fiber(c.space, c.fam, 0);
  Cycle f1 = family_fiber(c.space, c.fam, 1);
  REQUIRE(f0.components.size() == 1);
  REQUIRE(f1.components.size() == 1);
  CHECK(f0.components[0].ideal == c.space.normalize(c.a0.components[0].ideal));
  CHECK(f1.components[0].ideal == c.space.normalize(c.a1.components[0].ideal));
  CHECK(f0.components[0].mult == 1);

  CycleFamily constant = make_family(c.space, "K", "l", {"x - 1", "y - 1", "z"}, {0, 1}, 1);
  for (int v : {0, 1, 5}) {
    Cycle k = family_fiber(c.space, constant, v);
    REQUIRE(k.components.size() == 1);
    CHECK(same(c.space, k.components[0].ideal, ideal(c.r, {"x - 1", "y - 1", "z"})));
  }
  CHECK_THROWS_AS(make_family(c.space, "bad", "l", {"x - y", "z", "t - l"}, {0, 1}, 2), Error);
  CHECK_THROWS_AS(make_family(c.space, "clash", "t", {"x - y", "z"}, {0, 1}, 1), Error);
}

TEST_CASE("fiber decomposition with multiplicities") {
  Ring r({"x", "y"});
  Space plane = Space::affine(r, Ideal(r));
  CycleFamily hyperbola = make_family(plane, "H", "l", {"x*y - l"}, {0, 1}, 1);
  Cycle h0 = family_fiber(plane, hyperbola, 0);
  REQUIRE(h0.components.size() == 2);
  CHECK(h0.components[0].ideal == ideal(r, {"x"}));
  CHECK(h0.components[1].ideal == ideal(r, {"y"}));
  CHECK(h0.components[0].mult == 1);
  CHECK(family_fiber(plane, hyperbola, 1).components.size() == 1);

  CycleFamily parabola = make_family(plane, "P", "l", {"y^2 - l*x"}, {0, 1}, 1);
  Cycle p0 = family_fiber(plane, parabola, 0);
  REQUIRE(p0.components.size() == 1);
  CHECK(p0.components[0].ideal == ideal(r, {"y"}));
  CHECK(p0.components[0].mult == 2);

  // Cubic with a triple and a simple factor.
  auto parts = decompose_cycle(plane, ideal(r, {"x^3*(x - y - 1)"}), 1);
  REQUIRE(parts.size() == 2);
  int total = 0;
  for (const auto& p : parts) total += p.mult;
  CHECK(total == 4);

  // Zero-cycles.
  auto pts = decompose_cycle(plane, ideal(r, {"x^2 - 2", "y^3"}), 0);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].mult == 3);
}

TEST_CASE("family perversity checks") {
  const Cone& c = cone();
  Perversity one = Perversity::parse("1,1,1");
  auto coarse = family_perversity_check(c.space, c.fam, c.coarse, one, FamilyMode::Strong);
  CHECK(coarse.pass);
  REQUIRE(coarse.generic.size() == 3);
  CHECK(coarse.generic[1].dim == 0);
  CHECK(family_perversity_check(c.space, c.fam, c.coarse, one, FamilyMode::Weak).pass);

  auto weak = family_perversity_check(c.space, c.fam, c.fine, one, FamilyMode::Weak);
  CHECK_FALSE(weak.pass);
  CHECK_FALSE(weak.marked[0].second.pass);
  CHECK(weak.marked[1].second.pass);
  auto strong = family_perversity_check(c.space, c.fam, c.fine, one, FamilyMode::Strong);
  CHECK_FALSE(strong.pass);
  bool at_zero = false;
  for (const auto& sf : strong.special) at_zero = at_zero || (sf.locus.to_string() == "l" && !sf.pass);
  CHECK(at_zero);

  CycleFamily constant = make_family(c.space, "K", "l", {"x - 1", "y - 1", "z"}, {0, 1}, 1);
  for (auto mode : {FamilyMode::Weak, FamilyMode::Strong}) {
    CHECK(family_perversity_check(c.space, constant, c.fine, Perversity::zero(3), mode).pass);
  }
}

TEST_CASE("error terms") {
  const Cone& c = cone();
  // The transformed family meets the fiber over l = 0 only in the transform of alpha0.
  for (int v : {0, 1}) {
    ErrorTerm e = error_terms(c.tower, c.fam, v);
    CHECK(e.components.empty());
    CHECK_FALSE(e.support_only);
  }
  CycleFamily constant = make_family(c.space, "K", "l", {"x - 1", "y - 1", "z"}, {0, 1}, 1);
  CHECK(error_terms(c.tower, constant, 0).components.empty());

  Ring r({"x", "y"});
  Space plane = Space::affine(r, Ideal(r));
  Tower bl = Tower::build(plane, {{"0", ideal(r, {"x", "y"})}});
  CycleFamily lines = make_family(plane, "M", "l", {"x + y - l"}, {0, 1}, 1);
  ErrorTerm e0 = error_terms(bl, lines, 0);
  REQUIRE(e0.components.size() == 1);
  CHECK(e0.components[0].mult == 1);
  CHECK(e0.components[0].image == ideal(r, {"x", "y"}));
  // The plane is smooth, so the exceptional line lies over no singular point.
  CHECK_FALSE(e0.over_singular_locus());
  CHECK(error_terms(bl, lines, 1).components.empty());
}
