#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resint/errors.hpp"

namespace resint {

using Scalar = mpq_class;
using Exponents = std::vector<std::uint32_t>;

std::string scalar_to_string(const Scalar& c);

struct MonomialOrder {
  enum class Kind { Lex, Grevlex, Block };
  Kind kind = Kind::Grevlex;
  // Block: the first `block` variables form the larger block, grevlex inside each block.
  std::size_t block = 0;

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
  static MonomialOrder elimination(std::size_t k) { return {Kind::Block, k}; }

  int compare(const Exponents& a, const Exponents& b) const;
  bool is_degree_compatible() const { return kind == Kind::Grevlex; }
  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && (kind != Kind::Block || block == o.block);
  }
  std::string name() const;
};

class Ring {
 public:
  Ring() = default;
  Ring(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex());

  std::size_t size() const { return d_ ? d_->names.size() : 0; }
  const std::string& name(std::size_t i) const { return d_->names[i]; }
  const std::vector<std::string>& names() const { return d_->names; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;
  const MonomialOrder& order() const { return d_->order; }

  Ring with_order(MonomialOrder o) const { return Ring(d_->names, o); }
  Ring extended(const std::vector<std::string>& extra) const;
  std::string fresh_name(const std::string& stem) const;

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }
  bool same_variables(const Ring& o) const;

 private:
  struct Data {
    std::vector<std::string> names;
    MonomialOrder order;
  };
  std::shared_ptr<const Data> d_;
};

struct Term {
  Exponents exp;
  Scalar coef;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& r, const Scalar& c);
  static Polynomial variable(const Ring& r, std::size_t i);
  static Polynomial variable(const Ring& r, std::string_view name) { return variable(r, r.require(name)); }
  static Polynomial monomial(const Ring& r, Exponents e, const Scalar& c);
  // Terms in any order; like terms are combined.
  static Polynomial from_terms(const Ring& r, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Scalar> constant_value() const;
  const Term& leading() const { return terms_.front(); }
  const Exponents& lm() const { return terms_.front().exp; }
  const Scalar& lc() const { return terms_.front().coef; }

  int total_degree() const;
  int degree(std::size_t var) const;
  std::vector<bool> support() const;
  std::size_t support_size() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Scalar& c) const;
  Polynomial monic() const;
  Polynomial tail() const;
  Polynomial mul_term(const Exponents& e, const Scalar& c) const;
  // this - c * x^e * g, the basic reduction step
  Polynomial sub_mul_term(const Scalar& c, const Exponents& e, const Polynomial& g) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Same variables under a different monomial order.
  Polynomial reordered(const Ring& r) const;
  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  Ring ring_;
  std::vector<Term> terms_;  // strictly decreasing under ring_.order()
};

Polynomial pow(const Polynomial& f, unsigned k);
Polynomial parse_polynomial(const Ring& r, std::string_view text);

Polynomial differentiate(const Polynomial& f, std::size_t var);
// images[i] is the image of variable i; all images live in `target`.
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images, const Ring& target);
Polynomial substitute_var(const Polynomial& f, std::size_t var, const Polynomial& value);
Scalar evaluate(const Polynomial& f, const std::vector<Scalar>& point);
// Variables are matched by name.
Polynomial change_ring(const Polynomial& f, const Ring& target);

Polynomial exact_divide(const Polynomial& f, const Polynomial& g);
std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g);
struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors);

bool is_homogeneous(const Polynomial& f);
// Target contains every variable of f (by name) plus the pivot; terms are padded to the total degree.
Polynomial homogenize(const Polynomial& f, const Ring& target, std::size_t pivot);
// Sets the pivot to 1; the remaining variables map positionally onto `target`.
Polynomial dehomogenize(const Polynomial& f, std::size_t pivot, const Ring& target);

// f as a polynomial in `vars` with coefficients in the same ring (free of `vars`).
std::map<Exponents, Polynomial> coefficients_in(const Polynomial& f, const std::vector<std::size_t>& vars);
// Coefficients of powers of one variable, index = degree.
std::vector<Polynomial> univariate_coefficients(const Polynomial& f, std::size_t var);

bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents quotient_exp(const Exponents& a, const Exponents& b);
bool coprime(const Exponents& a, const Exponents& b);
unsigned degree_of(const Exponents& e);

}  // namespace resint
