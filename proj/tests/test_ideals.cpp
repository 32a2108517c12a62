#include <random>

#include "doctest.h"
#include "resint/ideals.hpp"
#include "support/properties.hpp"

using namespace resint;

namespace {

Ring xyzt() { return Ring({"x", "y", "z", "t"}); }

Ideal ideal(const Ring& r, std::vector<std::string> g) { return Ideal::parse(r, g); }

using props::random_poly;

}  // namespace

TEST_CASE("groebner basis examples") {
  Ring x({"x"}, MonomialOrder::lex());
  auto b = groebner_basis(x, {parse_polynomial(x, "x^2 - 1"), parse_polynomial(x, "x - 1")}, MonomialOrder::lex());
  REQUIRE(b.elements().size() == 1);
  CHECK(b.elements()[0] == parse_polynomial(x, "x - 1"));
  CHECK_FALSE(b.contains(parse_polynomial(x, "x + 1")));
  CHECK(b.contains(parse_polynomial(x, "x^2 - 1")));

  CHECK(groebner_basis(x, {}, MonomialOrder::lex()).elements().empty());

  Ring xy({"x", "y"});
  auto c = groebner_basis(xy, {parse_polynomial(xy, "x + y"), parse_polynomial(xy, "x - y")}, MonomialOrder::grevlex());
  REQUIRE(c.elements().size() == 2);
  CHECK(c.elements()[0] == parse_polynomial(xy, "x"));
  CHECK(c.elements()[1] == parse_polynomial(xy, "y"));
}

TEST_CASE("normal form") {
  Ring r = xyzt();
  Ideal d = ideal(r, {"x + y", "t"});
  CHECK(d.basis().normal_form(parse_polynomial(r, "x^2 - y^2 + t*z^2")).is_zero());
  CHECK(d.basis().normal_form(Polynomial(r)).is_zero());
  Ideal m = ideal(r, {"x", "y"});
  CHECK(m.basis().normal_form(Polynomial::constant(r, 1)) == Polynomial::constant(r, 1));
  Polynomial f = parse_polynomial(r, "x*z + t^2 + y");
  Polynomial nf = d.basis().normal_form(f);
  CHECK(d.basis().normal_form(nf) == nf);
}

TEST_CASE("elimination") {
  Ring r = xyzt();
  Ideal a1 = ideal(r, {"x - y", "t - 1", "z", "x^2 - y^2 + t*z^2"});
  Ideal e = eliminate(a1, std::vector<std::string>{"x", "y", "z"});
  CHECK(e.ring().names() == std::vector<std::string>{"t"});
  CHECK(e == ideal(e.ring(), {"t - 1"}));
  CHECK(eliminate(Ideal(r), std::vector<std::string>{"x"}).is_zero());
  Ring xt({"x", "t"});
  CHECK(eliminate(ideal(xt, {"x*t - 1"}), std::vector<std::string>{"x"}).is_zero());
  CHECK_THROWS_AS(eliminate(a1, std::vector<std::string>{"x", "y", "z", "t"}), Error);
}

TEST_CASE("quotient and saturation") {
  Ring r({"x'", "y'", "z", "t"});
  Ideal i = ideal(r, {"z*(x' + y')", "t"});
  Ideal q = quotient(i, parse_polynomial(r, "z"));
  CHECK(q == ideal(r, {"x' + y'", "t"}));
  CHECK(quotient(i, Polynomial::constant(r, 1)) == i);
  Ring x({"x"});
  CHECK(quotient(ideal(x, {"x^2"}), parse_polynomial(x, "x")) == ideal(x, {"x"}));

  Saturation s = saturate(i, ideal(r, {"z"}));
  CHECK(s.ideal == ideal(r, {"x' + y'", "t"}));
  CHECK(s.exponent == 1);
  CHECK_THROWS_AS(saturate(i, Ideal::unit(r)), Error);
  CHECK_THROWS_AS(saturate(i, Ideal(r)), Error);

  Ring xy({"x", "y"});
  Saturation s2 = saturate(ideal(xy, {"x*y"}), ideal(xy, {"x"}));
  CHECK(s2.ideal == ideal(xy, {"y"}));
  CHECK(s2.exponent == 1);
  Saturation s3 = saturate(ideal(xy, {"x^3*y", "x^4"}), ideal(xy, {"x"}));
  CHECK(s3.ideal.is_trivial());
  CHECK(s3.exponent == 4);
}

TEST_CASE("krull dimension") {
  Ring r = xyzt();
  CHECK(krull_dimension(ideal(r, {"x", "y", "z"})) == 1);
  CHECK(krull_dimension(Ideal(r)) == 4);
  CHECK(krull_dimension(ideal(r, {"x + y", "t", "x^2 - y^2 + t*z^2"})) == 2);
  CHECK_THROWS_AS(krull_dimension(ideal(r, {"x", "x + 1"})), Error);
  CHECK_FALSE(dimension(ideal(r, {"x", "x + 1"})).has_value());
}

TEST_CASE("triviality") {
  Ring x({"x"});
  CHECK(ideal(x, {"x", "x + 1"}).is_trivial());
  CHECK_FALSE(ideal(x, {"x"}).is_trivial());
}

TEST_CASE("radical membership and zero-dimensional counting") {
  Ring xy({"x", "y"});
  Ideal i = ideal(xy, {"x^2", "y"});
  CHECK(radical_contains(i, parse_polynomial(xy, "x")));
  CHECK_FALSE(i.contains(parse_polynomial(xy, "x")));
  CHECK_FALSE(radical_contains(i, parse_polynomial(xy, "x + 1")));
  CHECK(vector_space_dimension(i) == 2);
  CHECK(vector_space_dimension(ideal(xy, {"x^2 - 1", "y^3 - x"})) == 6);
  CHECK_THROWS_AS(vector_space_dimension(ideal(xy, {"x"})), Error);
  CHECK(vector_space_dimension(Ideal::unit(xy)) == 0);
}

TEST_CASE("intersection") {
  Ring xy({"x", "y"});
  Ideal m = intersect(ideal(xy, {"x"}), ideal(xy, {"y"}));
  CHECK(m == ideal(xy, {"x*y"}));
  CHECK(intersect(ideal(xy, {"x"}), Ideal::unit(xy)) == ideal(xy, {"x"}));
}

TEST_CASE("property suites") {
  for (const auto& r : {props::buchberger_suite(), props::saturation_suite(), props::monomial_dimension_suite()}) {
    CHECK_MESSAGE(r.ok(), r.first_failure);
    CHECK(r.cases >= 100);
  }
}

TEST_CASE("property: elimination ideal lies in the original ideal") {
  std::mt19937 rng(31);
  Ring r({"a", "b", "c"});
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Polynomial> gens;
    for (int j = 0; j < 3; ++j) gens.push_back(random_poly(r, rng, 2, 3));
    Ideal i(r, gens);
    Ideal e = eliminate(i, std::vector<std::size_t>{0});
    for (const auto& g : e.generators()) CHECK(i.contains(change_ring(g, r)));
  }
}

TEST_CASE("budget is enforced") {
  EngineBudget saved = default_budget();
  set_default_budget({5, 100});
  Ring r({"a", "b", "c"});
  Ideal i = Ideal::parse(r, {"a^2*b - c^3 + 1", "a*b^2 - a*c", "b*c^2 - a^2 - 2"});
  CHECK_THROWS_AS(i.basis(), Error);
  set_default_budget(saved);
}
