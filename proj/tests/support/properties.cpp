#include "properties.hpp"

namespace resint::props {

Polynomial random_poly(const Ring& r, std::mt19937& rng, int max_deg, int max_terms, int coef_bound) {
  std::uniform_int_distribution<int> coef(-coef_bound, coef_bound), deg(0, max_deg), nterms(1, max_terms);
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

bool spolys_reduce_to_zero(const GroebnerBasis& b) {
  const auto& g = b.elements();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Exponents l = lcm(g[i].lm(), g[j].lm());
      Polynomial s = g[i].mul_term(quotient_exp(l, g[i].lm()), 1 / g[i].lc()) -
                     g[j].mul_term(quotient_exp(l, g[j].lm()), 1 / g[j].lc());
      if (!divide(s, g).remainder.is_zero()) return false;
    }
  }
  return true;
}

bool interreduced(const GroebnerBasis& b) {
  const auto& g = b.elements();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].lc() != 1) return false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i != j && divides(g[j].lm(), g[i].lm())) return false;
    }
  }
  return true;
}

namespace {

void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.cases;
  if (ok) return;
  if (r.failures++ == 0) r.first_failure = what;
}

std::vector<std::string> names(std::size_t n, char first) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < n; ++v) out.push_back(std::string(1, static_cast<char>(first + v)));
  return out;
}

}  // namespace

SuiteResult buchberger_suite(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult res;
  for (int trial = 0; trial < trials; ++trial) {
    MonomialOrder ord = trial % 3 == 0 ? MonomialOrder::lex() : MonomialOrder::grevlex();
    Ring r(names(1 + trial % 3, 'a'), ord);
    std::vector<Polynomial> gens;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < k; ++j) gens.push_back(random_poly(r, rng, 3, 3));
    Ideal i(r, gens);
    const GroebnerBasis& b = i.basis();
    bool ok = spolys_reduce_to_zero(b) && interreduced(b);
    for (const auto& g : gens) ok = ok && b.contains(g);
    record(res, ok, i.to_string());
  }
  return res;
}

SuiteResult saturation_suite(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult res;
  Ring r(names(3, 'a'));
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Polynomial> gens;
    for (int j = 0; j < 2; ++j) gens.push_back(random_poly(r, rng, 3, 3));
    Polynomial f = random_poly(r, rng, 1, 2);
    if (f.is_constant()) f = f + Polynomial::variable(r, trial % 3);
    Ideal i(r, gens);
    Saturation s = saturate(i, f);
    bool ok = quotient(s.ideal, f) == s.ideal && s.ideal.contains(i) && saturate(s.ideal, f).ideal == s.ideal;
    record(res, ok, i.to_string() + " : (" + f.to_string() + ")^inf");
  }
  return res;
}

SuiteResult monomial_dimension_suite(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult res;
  for (int trial = 0; trial < trials; ++trial) {
    std::size_t n = 2 + trial % 3;
    Ring r(names(n, 'p'));
    std::vector<Exponents> monos;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) {
      Exponents e(n, 0);
      for (auto& x : e) x = rng() % 3;
      if (degree_of(e) == 0) e[rng() % n] = 1;
      monos.push_back(e);
    }
    std::vector<Polynomial> gens;
    for (const auto& e : monos) gens.push_back(Polynomial::monomial(r, e, 1));
    // dim R/I is the largest variable set containing the support of no generator.
    int brute = 0;
    for (unsigned s = 0; s < (1u << n); ++s) {
      bool ok = true;
      for (const auto& e : monos) {
        bool inside = true;
        for (std::size_t v = 0; v < n; ++v) {
          if (e[v] && !(s & (1u << v))) inside = false;
        }
        if (inside) ok = false;
      }
      if (ok) brute = std::max(brute, __builtin_popcount(s));
    }
    Ideal i(r, gens);
    record(res, krull_dimension(i) == brute, i.to_string());
  }
  return res;
}

SuiteResult ring_axiom_suite(int trials, unsigned seed) {
  std::mt19937 rng(seed);
  SuiteResult res;
  Ring r({"x", "y", "z", "t"});
  Polynomial zero(r), one = Polynomial::constant(r, 1);
  for (int i = 0; i < trials; ++i) {
    Polynomial f = random_poly(r, rng, 3, 4, 9), g = random_poly(r, rng, 3, 4, 9), h = random_poly(r, rng, 3, 4, 9);
    bool ok = f * (g + h) == f * g + f * h && (f * g) * h == f * (g * h) && f * g == g * f &&
              (f + g) + h == f + (g + h) && f + g == g + f && f + zero == f && f * one == f && (f - f).is_zero() &&
              (f + g) - g == f && -(-f) == f;
    record(res, ok, f.to_string() + " | " + g.to_string() + " | " + h.to_string());
  }
  return res;
}

}  // namespace resint::props
