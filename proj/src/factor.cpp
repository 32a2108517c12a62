#include "resint/factor.hpp"

#include <algorithm>

#include "resint/ideals.hpp"
#include "upoly.hpp"

namespace resint {

using namespace upoly;

namespace {

constexpr int kUnivariateCap = 8;
constexpr int kMultivariateDegreeCap = 4;
constexpr std::size_t kMultivariateVarCap = 3;

QPoly to_upoly(const Polynomial& f, std::size_t var) {
  QPoly q(std::max(f.degree(var), 0) + 1);
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      if (v != var && t.exp[v]) throw Error(ErrorKind::Precondition, "polynomial is not univariate");
    }
    q[t.exp[var]] += t.coef;
  }
  trim(q);
  return q;
}

Polynomial from_upoly(const QPoly& q, const Ring& r, std::size_t var) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    Exponents e(r.size(), 0);
    e[var] = static_cast<std::uint32_t>(i);
    ts.push_back({e, q[i]});
  }
  return Polynomial::from_terms(r, std::move(ts));
}

Polynomial normalize(const Polynomial& p) {
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) den = lcm(den, mpz_class(t.coef.get_den()));
  for (const auto& t : p.terms()) num = gcd(num, mpz_class(t.coef * den));
  Scalar c(den, num);
  c.canonicalize();
  Polynomial q = p.scaled(c);
  if (q.lc() < 0) q = -q;
  return q;
}

std::vector<Polynomial> factor_squarefree_univariate(const Polynomial& f, std::size_t var) {
  QPoly q = to_upoly(f, var);
  if (deg(q) > kUnivariateCap) {
    throw Error(ErrorKind::FactorizationScope,
                "factorization scope exceeded: univariate degree " + std::to_string(deg(q)) + " > 8");
  }
  std::vector<Polynomial> out;
  for (const auto& z : zassenhaus(to_primitive_z(q))) out.push_back(from_upoly(to_q(z), f.ring(), var));
  return out;
}

// Coefficient of x^d when f has constant leading coefficient in x and total degree d.
bool monic_in(const Polynomial& f, std::size_t x, int d) {
  for (const auto& t : f.terms()) {
    if (static_cast<int>(t.exp[x]) == d) {
      if (degree_of(t.exp) != static_cast<unsigned>(d)) return false;
    }
  }
  return f.degree(x) == d;
}

std::vector<Polynomial> identity_images(const Ring& r) {
  std::vector<Polynomial> im;
  for (std::size_t v = 0; v < r.size(); ++v) im.push_back(Polynomial::variable(r, v));
  return im;
}

// Irreducible factors of a squarefree polynomial in 2 or 3 variables.
std::vector<Polynomial> factor_squarefree_multivariate(const Polynomial& s, const std::vector<std::size_t>& vars) {
  const Ring& r = s.ring();
  int d = s.total_degree();
  if (d <= 1) return {s};
  std::size_t x = vars[0];
  std::vector<std::size_t> ys(vars.begin() + 1, vars.end());

  static const std::vector<std::pair<int, int>> shears = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2},
                                                          {-1, 1}, {2, 3}, {3, 1}, {1, -2}, {3, 2}, {-2, 3}};
  static const std::vector<std::pair<int, int>> points = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {1, 1}, {2, 0}, {0, 2},
                                                          {-1, 1}, {2, 1}, {1, -1}, {3, 0}, {0, -2}, {2, -1}, {3, 2}};
  for (const auto& [a1, a2] : shears) {
    if (ys.size() == 1 && a2 != 0) continue;
    std::vector<Polynomial> fwd = identity_images(r), back = identity_images(r);
    Polynomial xv = Polynomial::variable(r, x);
    int coef[2] = {a1, a2};
    for (std::size_t k = 0; k < ys.size(); ++k) {
      fwd[ys[k]] = Polynomial::variable(r, ys[k]) + xv.scaled(coef[k]);
      back[ys[k]] = Polynomial::variable(r, ys[k]) - xv.scaled(coef[k]);
    }
    Polynomial sh = substitute(s, fwd, r);
    if (!monic_in(sh, x, d)) continue;

    for (const auto& [b1, b2] : points) {
      if (ys.size() == 1 && b2 != 0) continue;
      int pt[2] = {b1, b2};
      std::vector<Polynomial> at = identity_images(r), shift = identity_images(r), unshift = identity_images(r);
      for (std::size_t k = 0; k < ys.size(); ++k) {
        at[ys[k]] = Polynomial::constant(r, pt[k]);
        shift[ys[k]] = Polynomial::variable(r, ys[k]) + Polynomial::constant(r, pt[k]);
        unshift[ys[k]] = Polynomial::variable(r, ys[k]) - Polynomial::constant(r, pt[k]);
      }
      QPoly u = to_upoly(substitute(sh, at, r), x);
      if (deg(u) != d || deg(q_gcd(u, q_derivative(u))) > 0) continue;

      std::vector<QPoly> us;
      for (const auto& z : zassenhaus(to_primitive_z(u))) us.push_back(q_monic(to_q(z)));
      if (us.size() == 1) return {s};

      Polynomial F = substitute(sh, shift, r);
      F = F.scaled(1 / univariate_coefficients(F, x)[d].constant_value().value());
      std::size_t nf = us.size();
      std::vector<QPoly> inv(nf);
      for (std::size_t i = 0; i < nf; ++i) {
        QPoly prod = {1};
        for (std::size_t j = 0; j < nf; ++j) {
          if (j != i) prod = q_mul(prod, us[j]);
        }
        QPoly g, sa, tb;
        q_ext_gcd(q_divmod(prod, us[i]).second, us[i], g, sa, tb);
        inv[i] = sa;
      }
      std::vector<Polynomial> G;
      for (const auto& ui : us) G.push_back(from_upoly(ui, r, x));

      auto ydeg = [&](const Exponents& e) {
        unsigned k = 0;
        for (std::size_t y : ys) k += e[y];
        return k;
      };
      for (int k = 1; k <= d; ++k) {
        Polynomial prod = Polynomial::constant(r, 1);
        for (const auto& g : G) prod *= g;
        Polynomial E = F - prod;
        std::map<Exponents, QPoly> parts;
        for (const auto& t : E.terms()) {
          if (ydeg(t.exp) != static_cast<unsigned>(k)) continue;
          Exponents m = t.exp;
          unsigned px = m[x];
          m[x] = 0;
          QPoly& q = parts[m];
          if (q.size() <= px) q.resize(px + 1);
          q[px] += t.coef;
        }
        for (auto& [m, em] : parts) {
          trim(em);
          for (std::size_t i = 0; i < nf; ++i) {
            QPoly delta = q_divmod(q_mul(em, inv[i]), us[i]).second;
            G[i] += from_upoly(delta, r, x) * Polynomial::monomial(r, m, 1);
          }
        }
      }

      std::vector<Polynomial> found;
      std::vector<std::size_t> remaining(nf);
      for (std::size_t i = 0; i < nf; ++i) remaining[i] = i;
      std::size_t sz = 1;
      while (2 * sz <= remaining.size()) {
        bool hit = false;
        std::vector<bool> pick(remaining.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(sz), true);
        do {
          Polynomial H = Polynomial::constant(r, 1);
          int hd = 0;
          for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (!pick[k]) continue;
            H *= G[remaining[k]];
            hd += deg(us[remaining[k]]);
          }
          std::vector<Term> keep;
          for (const auto& t : H.terms()) {
            if (static_cast<int>(degree_of(t.exp)) <= hd) keep.push_back(t);
          }
          H = Polynomial::from_terms(r, keep);
          if (auto q = try_divide(F, H)) {
            found.push_back(H);
            F = *q;
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < remaining.size(); ++k) {
              if (!pick[k]) rest.push_back(remaining[k]);
            }
            remaining = rest;
            hit = true;
            break;
          }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!hit) ++sz;
      }
      if (F.total_degree() > 0) found.push_back(F);

      std::vector<Polynomial> out;
      for (const auto& h : found) out.push_back(substitute(substitute(h, unshift, r), back, r));
      return out;
    }
  }
  throw Error(ErrorKind::FactorizationScope, "factorization scope exceeded: no usable evaluation point");
}

}  // namespace

Polynomial Factorization::expand(const Ring& r) const {
  Polynomial p = Polynomial::constant(r, unit);
  for (const auto& f : factors) p *= pow(f.poly, static_cast<unsigned>(f.multiplicity));
  return p;
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.ring(), 1);
  Ideal meet = intersect(Ideal(a.ring(), {a}), Ideal(a.ring(), {b}));
  const auto& el = meet.basis().elements();
  if (el.size() != 1) throw Error(ErrorKind::Precondition, "principal intersection expected");
  return exact_divide(a * b, el[0].reordered(a.ring())).monic();
}

Polynomial squarefree_part(const Polynomial& f) {
  if (f.is_zero() || f.is_constant()) return f;
  Polynomial g = f;
  auto sup = f.support();
  for (std::size_t v = 0; v < sup.size(); ++v) {
    if (sup[v]) g = polynomial_gcd(g, differentiate(f, v));
  }
  return exact_divide(f, g);
}

Factorization factor(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::Precondition, "cannot factor the zero polynomial");
  const Ring& r = f.ring();
  Factorization out;
  if (f.is_constant()) {
    out.unit = f.lc();
    return out;
  }
  auto sup = f.support();
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < sup.size(); ++v) {
    if (sup[v]) vars.push_back(v);
  }

  std::vector<Polynomial> irreducible;
  if (vars.size() == 1) {
    for (const auto& [part, mult] : q_squarefree(to_upoly(f, vars[0]))) {
      (void)mult;
      for (auto& p : factor_squarefree_univariate(from_upoly(part, r, vars[0]), vars[0])) irreducible.push_back(p);
    }
  } else {
    if (vars.size() > kMultivariateVarCap || f.total_degree() > kMultivariateDegreeCap) {
      throw Error(ErrorKind::FactorizationScope, "factorization scope exceeded: " + std::to_string(vars.size()) +
                                                     " variables, total degree " + std::to_string(f.total_degree()));
    }
    Polynomial s = squarefree_part(f);
    auto ssup = s.support();
    std::vector<std::size_t> svars;
    for (std::size_t v = 0; v < ssup.size(); ++v) {
      if (ssup[v]) svars.push_back(v);
    }
    if (svars.size() == 1) {
      for (auto& p : factor_squarefree_univariate(s, svars[0])) irreducible.push_back(p);
    } else {
      // Factors not involving the main variable are split off by content in the others.
      irreducible = factor_squarefree_multivariate(s, svars);
    }
  }

  Polynomial rest = f;
  for (auto& p : irreducible) {
    Polynomial q = normalize(p);
    int e = 0;
    while (auto d = try_divide(rest, q)) {
      rest = *d;
      ++e;
    }
    if (e == 0) throw Error(ErrorKind::Precondition, "internal: factor does not divide its input");
    out.factors.push_back({q, e});
  }
  if (!rest.is_constant()) throw Error(ErrorKind::Precondition, "internal: factorization incomplete");
  out.unit = rest.lc();
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return a.poly.to_string() < b.poly.to_string(); });
  if (out.expand(r) != f) throw Error(ErrorKind::Precondition, "internal: factorization does not reproduce input");
  return out;
}

}  // namespace resint
