#pragma once

#include <random>
#include <string>

#include "resint/ideals.hpp"

namespace resint::props {

Polynomial random_poly(const Ring& r, std::mt19937& rng, int max_deg, int max_terms, int coef_bound = 5);

// S-polynomial criterion checked from scratch with plain multivariate division.
bool spolys_reduce_to_zero(const GroebnerBasis& b);
bool interreduced(const GroebnerBasis& b);

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// Random ideals in at most 3 variables with generators of degree at most 3.
SuiteResult buchberger_suite(int trials = 200, unsigned seed = 12345);
// (I : f^inf) : f = I : f^inf and I is contained in its saturation.
SuiteResult saturation_suite(int trials = 100, unsigned seed = 777);
// Krull dimension of monomial ideals against the coordinate-subspace count.
SuiteResult monomial_dimension_suite(int trials = 100, unsigned seed = 4242);
// Distributivity, associativity, commutativity, identities and additive inverses.
SuiteResult ring_axiom_suite(int trials = 500, unsigned seed = 2024);

}  // namespace resint::props
