#include <random>

#include "doctest.h"
#include "resint/geometry.hpp"

using namespace resint;

namespace {

Ideal ideal(const Ring& r, std::vector<std::string> g) { return Ideal::parse(r, g); }

AffineChart chart(const Ring& r, std::vector<std::string> g, std::string label = "c") {
  return {std::move(label), r, ideal(r, std::move(g))};
}

}  // namespace

TEST_CASE("cone is singular exactly along the line") {
  Ring r({"x", "y", "z", "t"});
  Ideal sing = singular_locus(chart(r, {"x^2 - y^2 + t*z^2"}));
  Ideal line = ideal(r, {"x", "y", "z"});
  CHECK(locus_subset(sing, line));
  CHECK(locus_subset(line, sing));
  CHECK_FALSE(is_smooth(chart(r, {"x^2 - y^2 + t*z^2"})));
}

TEST_CASE("blowup charts of the cone") {
  Ring rx({"x", "y'", "z'", "t"});
  CHECK(is_smooth(chart(rx, {"1 - y'^2 + t*z'^2"})));
  Ring rz({"x'", "y'", "z", "t"});
  CHECK(is_smooth(chart(rz, {"x'^2 - y'^2 + t"})));

  Ring rs({"x'", "y'", "z'", "s"});
  AffineChart c = chart(rs, {"s - s*y'^2 + z'^2"});
  CHECK_FALSE(is_smooth(c));
  Ideal expected = ideal(rs, {"1 - y'^2", "s", "z'"});
  CHECK(locus_subset(singular_locus(c), expected));
  CHECK(locus_subset(expected, singular_locus(c)));
}

TEST_CASE("degenerate singular loci") {
  Ring r({"x"});
  CHECK(singular_locus(chart(r, {"x^2"})) == ideal(r, {"x"}));
  Ring r3({"x", "y", "z"});
  CHECK(is_smooth(chart(r3, {"x + 2*y - z + 1"})));
  CHECK(singular_locus(chart(r3, {})).is_trivial());
}

TEST_CASE("singular locus rejects non-complete-intersection presentations") {
  Ring r({"x", "y", "z"});
  // Twisted-cubic-like presentation with three generators in codimension two.
  AffineChart c = chart(r, {"y - x^2", "z - x*y", "z - x^3"});
  CHECK_THROWS_AS(singular_locus(c), Error);
  try {
    singular_locus(c);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonCompleteIntersection);
  }
}

TEST_CASE("determinant by expansion") {
  Ring r({"a", "b"});
  auto p = [&](const char* s) { return parse_polynomial(r, s); };
  std::vector<std::vector<Polynomial>> m = {{p("a"), p("1"), p("0")}, {p("b"), p("a"), p("1")}, {p("0"), p("b"), p("a")}};
  CHECK(determinant(m) == p("a^3 - 2*a*b"));
}

TEST_CASE("conic rank loci") {
  Ring r({"x'", "y'", "t"});
  Ideal loc = conic_rank_locus(parse_polynomial(r, "y'^2 - x'^2 - t"), 0, 1);
  REQUIRE(loc.ring().size() == 1);
  CHECK(loc == ideal(loc.ring(), {"t"}));

  Ring r2({"x'", "y'"});
  CHECK(conic_rank_locus(parse_polynomial(r2, "x'^2 + y'^2 - 1"), 0, 1).is_trivial());
  CHECK(conic_rank_locus(parse_polynomial(r, "x'^2"), 0, 1).is_zero());
  CHECK_THROWS_AS(conic_rank_locus(parse_polynomial(r, "x'^3 + y'"), 0, 1), Error);
  CHECK_THROWS_AS(conic_rank_locus(parse_polynomial(r, "x' + t"), 0, 1), Error);
}

TEST_CASE("conic rank locus is invariant under unimodular fiber changes") {
  Ring r({"u", "v", "a", "b"});
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> small(-3, 3);
  std::vector<std::string> conics = {"u^2 - v^2 - a", "u*v + a*u + b*v + a*b", "a*u^2 + b*v^2 - 1",
                                     "u^2 + a*u*v + v^2 - b", "b*u^2 - 2*u + a*v^2 + v + a"};
  for (const auto& text : conics) {
    Polynomial q = parse_polynomial(r, text);
    Ideal base = conic_rank_locus(q, 0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      // Random product of elementary integer matrices has determinant 1.
      int p = 1, s = 0, t = 0, w = 1;
      for (int k = 0; k < 4; ++k) {
        int c = small(rng);
        if (k % 2 == 0) {
          p += c * s;
          t += c * w;
        } else {
          s += c * p;
          w += c * t;
        }
      }
      REQUIRE(p * w - s * t == 1);
      Polynomial u = Polynomial::variable(r, 0), v = Polynomial::variable(r, 1);
      std::vector<Polynomial> images = {u.scaled(p) + v.scaled(s), u.scaled(t) + v.scaled(w),
                                        Polynomial::variable(r, 2), Polynomial::variable(r, 3)};
      Ideal moved = conic_rank_locus(substitute(q, images, r), 0, 1);
      CHECK(moved == base);
    }
  }
}

TEST_CASE("zero-dimensional decomposition") {
  Ring rz({"x'", "y'", "z", "t"});
  Ideal i = ideal(rz, {"x'^2 - y'^2 + t", "x' + y'", "x' - y'", "z"});
  auto pts = zero_dim_decompose(i, "z");
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].multiplicity == 1);
  CHECK(pts[0].point.residue_degree == 1);
  CHECK(pts[0].point.coordinates == std::vector<Scalar>{0, 0, 0, 0});

  Ring rx({"x"});
  auto orbit = zero_dim_decompose(ideal(rx, {"x^2 - 2"}));
  REQUIRE(orbit.size() == 1);
  CHECK(orbit[0].point.residue_degree == 2);
  CHECK(orbit[0].multiplicity == 1);
  CHECK(orbit[0].point.coordinates.empty());

  Ring rxy({"x", "y"});
  auto fat = zero_dim_decompose(ideal(rxy, {"x^2", "y"}));
  REQUIRE(fat.size() == 1);
  CHECK(fat[0].multiplicity == 2);
  CHECK(fat[0].point.coordinates == std::vector<Scalar>{0, 0});

  CHECK(zero_dim_decompose(ideal(rxy, {"1"})).empty());
  CHECK_THROWS_AS(zero_dim_decompose(ideal(rxy, {"x"})), Error);
}

TEST_CASE("zero-dimensional decomposition handles points sharing coordinates") {
  Ring r({"x", "y"});
  // Four rational points, two of them doubled, plus a conjugate pair.
  Ideal a = ideal(r, {"x", "y"});
  Ideal b = ideal(r, {"x", "(y-1)^2"});
  Ideal c = ideal(r, {"x - 1", "y"});
  Ideal d = ideal(r, {"(x - 1)^2", "y - 1"});
  Ideal e = ideal(r, {"x^2 - 3", "y - x"});
  Ideal all = intersect(intersect(intersect(a, b), intersect(c, d)), e);
  auto pts = zero_dim_decompose(all);
  REQUIRE(pts.size() == 5);
  int total = 0, doubled = 0;
  for (const auto& p : pts) {
    total += p.multiplicity * p.point.residue_degree;
    if (p.multiplicity == 2) ++doubled;
  }
  CHECK(total == 8);
  CHECK(doubled == 2);
  CHECK(static_cast<std::size_t>(total) == vector_space_dimension(all));
}

TEST_CASE("zero-dimensional decomposition: random multiplicity sums") {
  Ring r({"x", "y"});
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(-3, 3), mult(1, 3);
  for (int trial = 0; trial < 25; ++trial) {
    Ideal acc = Ideal::unit(r);
    int npts = 1 + trial % 3;
    for (int k = 0; k < npts; ++k) {
      Polynomial x = Polynomial::variable(r, 0) - Polynomial::constant(r, coord(rng));
      Polynomial y = Polynomial::variable(r, 1) - Polynomial::constant(r, coord(rng));
      Ideal p(r, {pow(x, mult(rng)), pow(y, mult(rng))});
      acc = intersect(acc, p);
    }
    auto pts = zero_dim_decompose(acc);
    std::size_t sum = 0;
    for (const auto& p : pts) sum += p.multiplicity * p.point.residue_degree;
    CHECK(sum == vector_space_dimension(acc));
  }
}

TEST_CASE("projective layer") {
  Ring h({"S", "T", "X", "Y", "Z"});
  CHECK(projectively_empty(ideal(h, {"X + Y", "T", "X - Y", "S", "Z"})));
  CHECK(projectively_empty(irrelevant_ideal(h)));
  CHECK_FALSE(projectively_empty(ideal(h, {"S*X^2 - S*Y^2 + T*Z^2"})));

  auto pts = projective_points(ideal(h, {"X + Y", "T", "X", "Y", "Z"}));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].to_string() == "[1:0:0:0:0]");
  CHECK(pts[0].multiplicity == 1);

  CHECK(projective_dimension(ideal(h, {"S*X^2 - S*Y^2 + T*Z^2"})) == 3);
  CHECK_FALSE(projective_dimension(irrelevant_ideal(h)).has_value());
  CHECK_THROWS_AS(projective_saturate(ideal(h, {"X + 1"})), Error);
}

TEST_CASE("projective charts and closure") {
  Ring h({"S", "T", "X", "Y", "Z"});
  ProjectiveVariety v = ProjectiveVariety::make(h, ideal(h, {"S*X^2 - S*Y^2 + T*Z^2"}));
  AffineChart c = v.chart(0);
  CHECK(c.ring.names() == std::vector<std::string>{"t", "x", "y", "z"});
  CHECK(c.relations == ideal(c.ring, {"x^2 - y^2 + t*z^2"}));
  CHECK(projective_closure(c.relations, 0, h) == v.ideal);

  // Closure of a curve whose naive homogenization misses points at infinity.
  Ring a({"x", "y", "z"});
  Ring p({"W", "X", "Y", "Z"});
  Ideal twisted = ideal(a, {"y - x^2", "z - x^3"});
  Ideal closed = projective_closure(twisted, 0, p);
  CHECK(closed.contains(parse_polynomial(p, "Y^2 - X*Z")));
  CHECK(projective_dimension(closed) == 1);
  CHECK(dehomogenize(closed, 0, a) == twisted);
}

TEST_CASE("projective points across patches") {
  Ring h({"X", "Y", "Z"});
  // Conic meets a line in two points, one at infinity relative to the first patch.
  auto pts = projective_points(ideal(h, {"X*Y - Z^2", "Z"}));
  REQUIRE(pts.size() == 2);
  std::vector<std::string> s = {pts[0].to_string(), pts[1].to_string()};
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<std::string>{"[0:1:0]", "[1:0:0]"});

  auto tangent = projective_points(ideal(h, {"X*Y - Z^2", "Y"}));
  REQUIRE(tangent.size() == 1);
  CHECK(tangent[0].multiplicity == 2);
}
