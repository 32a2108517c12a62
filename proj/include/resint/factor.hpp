#pragma once

#include <vector>

#include "resint/polyring.hpp"

namespace resint {

struct Factor {
  Polynomial poly;
  int multiplicity = 1;
};

struct Factorization {
  Scalar unit;
  // Primitive integer factors with positive leading coefficient, sorted by printed form.
  std::vector<Factor> factors;
  Polynomial expand(const Ring& r) const;
};

// Univariate: Zassenhaus on squarefree parts of degree <= 8.
// Multivariate: total degree <= 4 in at most 3 variables.
Factorization factor(const Polynomial& f);

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);
Polynomial squarefree_part(const Polynomial& f);

}  // namespace resint
