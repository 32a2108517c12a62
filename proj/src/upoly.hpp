#pragma once

// Dense univariate polynomials used by the factorization engine. Index = degree, no trailing zeros.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace resint::upoly {

using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;
using FPoly = std::vector<std::int64_t>;

template <class P>
void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class P>
int deg(const P& a) {
  return static_cast<int>(a.size()) - 1;
}

QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
QPoly q_mul(const QPoly& a, const QPoly& b);
QPoly q_scale(const QPoly& a, const mpq_class& c);
std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b);
QPoly q_monic(const QPoly& a);
QPoly q_gcd(QPoly a, QPoly b);
QPoly q_derivative(const QPoly& a);
// s*a + t*b = gcd (monic)
void q_ext_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& s, QPoly& t);
// Yun: a = c * prod_i a_i^i with a_i monic squarefree and pairwise coprime.
std::vector<std::pair<QPoly, int>> q_squarefree(const QPoly& a);

ZPoly to_primitive_z(const QPoly& a);
QPoly to_q(const ZPoly& a);
mpz_class z_content(const ZPoly& a);
ZPoly z_primitive(const ZPoly& a);
ZPoly z_mul(const ZPoly& a, const ZPoly& b);

// Irreducible factors over Z of a primitive squarefree polynomial with positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& f);

}  // namespace resint::upoly
