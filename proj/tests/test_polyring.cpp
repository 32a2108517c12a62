#include <random>

#include "doctest.h"
#include "resint/polyring.hpp"
#include "support/properties.hpp"

using namespace resint;

namespace {

Ring xyzt() { return Ring({"x", "y", "z", "t"}); }

Polynomial random_poly(const Ring& r, std::mt19937& rng, int max_deg = 3, int max_terms = 4) {
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, max_deg), nterms(0, max_terms);
  std::vector<Term> ts;
  int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    Exponents e(r.size(), 0);
    int budget = deg(rng);
    for (int j = 0; j < budget; ++j) e[rng() % r.size()]++;
    ts.push_back({e, coef(rng)});
  }
  return Polynomial::from_terms(r, ts);
}

}  // namespace

TEST_CASE("parse the cone equation") {
  Ring r = xyzt();
  Polynomial f = parse_polynomial(r, "x^2 - y^2 + t*z^2");
  CHECK(f.size() == 3);
  bool has_tz2 = false;
  for (const auto& t : f.terms()) {
    if (t.exp == Exponents{0, 0, 2, 1}) has_tz2 = (t.coef == 1);
  }
  CHECK(has_tz2);
  CHECK(f.total_degree() == 3);
}

TEST_CASE("parse edge cases") {
  Ring r = xyzt();
  CHECK(parse_polynomial(r, "0").is_zero());
  CHECK(parse_polynomial(r, "(x+y)*(x-y)") == parse_polynomial(r, "x^2 - y^2"));
  CHECK(parse_polynomial(r, "-3/6*x").lc() == Scalar(-1, 2));
  CHECK(parse_polynomial(r, " - (x - 1)^2 ") == parse_polynomial(r, "-x^2 + 2*x - 1"));
  Ring primes({"x'", "y''", "t"});
  CHECK(parse_polynomial(primes, "x'^2 - y''*t").size() == 2);
}

TEST_CASE("parse errors carry byte offsets") {
  Ring r = xyzt();
  auto offset_of = [&](const char* s) -> std::size_t {
    try {
      parse_polynomial(r, s);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return SIZE_MAX;
  };
  CHECK(offset_of("x + w") == 4);
  CHECK(offset_of("x + ") == 4);
  CHECK(offset_of("x^-1") == 2);
  CHECK(offset_of("x ) y") == 2);
  CHECK(offset_of("1/0") == 2);
  CHECK(offset_of("") == 0);
}

TEST_CASE("printer is canonical and round-trips") {
  Ring r = xyzt();
  Polynomial f = parse_polynomial(r, "t*z^2 + x^2 - y^2");
  CHECK(f.to_string() == "z^2*t + x^2 - y^2");
  CHECK(parse_polynomial(r, "3/2*x - 7").to_string() == "3/2*x - 7");
  CHECK(Polynomial(r).to_string() == "0");
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Polynomial g = random_poly(r, rng);
    CHECK(parse_polynomial(r, g.to_string()) == g);
  }
}

TEST_CASE("arithmetic examples") {
  Ring r({"x'", "y'", "z", "t"});
  Polynomial a = parse_polynomial(r, "x' + y'"), b = parse_polynomial(r, "x' - y'");
  CHECK(a * b == parse_polynomial(r, "x'^2 - y'^2"));
  CHECK(a + Polynomial(r) == a);
  Polynomial total = parse_polynomial(r, "z^2*(x'^2 - y'^2 + t)");
  CHECK(exact_divide(total, parse_polynomial(r, "z^2")) == parse_polynomial(r, "x'^2 - y'^2 + t"));
  CHECK_THROWS_AS(exact_divide(total, parse_polynomial(r, "z^3")), Error);
  Ring other({"x", "y"});
  CHECK_THROWS_AS(a + Polynomial::variable(other, 0), Error);
}

TEST_CASE("differentiate") {
  Ring r = xyzt();
  Polynomial f = parse_polynomial(r, "x^2 - y^2 + t*z^2");
  CHECK(differentiate(f, r.require("x")) == parse_polynomial(r, "2*x"));
  CHECK(differentiate(Polynomial::constant(r, 5), 0).is_zero());
  CHECK(differentiate(parse_polynomial(r, "t*z^2"), r.require("t")) == parse_polynomial(r, "z^2"));
}

TEST_CASE("substitute realizes chart maps") {
  Ring base = xyzt();
  Ring chart({"x", "y'", "z'", "t"});
  Polynomial f = parse_polynomial(base, "x^2 - y^2 + t*z^2");
  std::vector<Polynomial> img = {parse_polynomial(chart, "x"), parse_polynomial(chart, "y'*x"),
                                 parse_polynomial(chart, "z'*x"), parse_polynomial(chart, "t")};
  CHECK(substitute(f, img, chart) == parse_polynomial(chart, "x^2*(1 - y'^2 + t*z'^2)"));
  std::vector<Polynomial> id;
  for (std::size_t i = 0; i < 4; ++i) id.push_back(Polynomial::variable(base, i));
  CHECK(substitute(f, id, base) == f);
  std::vector<Polynomial> zero(4, Polynomial(base));
  CHECK(substitute(parse_polynomial(base, "x + y"), zero, base).is_zero());
  CHECK_THROWS_AS(substitute(f, {id[0]}, base), Error);
}

TEST_CASE("homogenize and dehomogenize") {
  Ring proj({"S", "T", "X", "Y", "Z"});
  Ring patch({"t", "x", "y", "z"});
  Polynomial F = parse_polynomial(proj, "S*X^2 - S*Y^2 + T*Z^2");
  Ring affine({"x", "y", "z", "t"});
  CHECK(change_ring(dehomogenize(F, 0, patch), affine) == parse_polynomial(affine, "x^2 - y^2 + t*z^2"));
  Ring xw({"x", "w"});
  CHECK(homogenize(parse_polynomial(Ring({"x"}), "x + 1"), xw, 1) == parse_polynomial(xw, "x + w"));
  Ring XY({"X", "Y"});
  Ring y({"y"});
  CHECK(dehomogenize(parse_polynomial(XY, "X + Y"), 0, y) == parse_polynomial(y, "1 + y"));
  CHECK_THROWS_AS(dehomogenize(parse_polynomial(XY, "X + 1"), 0, y), Error);
}

TEST_CASE("ring axioms on random triples") {
  props::SuiteResult r = props::ring_axiom_suite();
  CHECK(r.cases == 500);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("Leibniz rule and invertible linear substitution") {
  Ring r = xyzt();
  std::mt19937 rng(99);
  std::vector<Polynomial> fwd, back;
  for (std::size_t i = 0; i < 4; ++i) {
    fwd.push_back(Polynomial::variable(r, i));
    back.push_back(Polynomial::variable(r, i));
  }
  fwd[0] = parse_polynomial(r, "x + 2*y - t");
  back[0] = parse_polynomial(r, "x - 2*y + t");
  fwd[2] = parse_polynomial(r, "3*z + y");
  back[2] = parse_polynomial(r, "1/3*z - 1/3*y");
  for (int i = 0; i < 100; ++i) {
    Polynomial f = random_poly(r, rng), g = random_poly(r, rng);
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(differentiate(f * g, v) == f * differentiate(g, v) + g * differentiate(f, v));
    }
    CHECK(substitute(substitute(f, fwd, r), back, r) == f);
  }
}

TEST_CASE("monomial orders") {
  Exponents a{2, 0, 0}, b{0, 3, 0}, c{1, 1, 1};
  CHECK(MonomialOrder::lex().compare(a, b) > 0);
  CHECK(MonomialOrder::grevlex().compare(b, a) > 0);
  CHECK(MonomialOrder::grevlex().compare(a, c) < 0);
  CHECK(MonomialOrder::elimination(1).compare(a, b) > 0);
  CHECK(MonomialOrder::elimination(1).compare(Exponents{0, 5, 5}, Exponents{1, 0, 0}) < 0);
}
