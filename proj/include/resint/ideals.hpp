#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resint/polyring.hpp"

namespace resint {

struct EngineBudget {
  std::uint64_t max_reductions = 1000000;
  std::size_t max_basis = 20000;
};

void set_default_budget(const EngineBudget& b);
EngineBudget default_budget();

struct EngineCounters {
  std::uint64_t reductions = 0;
  std::uint64_t groebner_calls = 0;
  std::uint64_t spairs = 0;
};

// Per-thread tallies, reset by the task runner.
EngineCounters& engine_counters();
void reset_engine_counters();

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(Ring r, std::vector<Polynomial> elems) : ring_(std::move(r)), elems_(std::move(elems)) {}

  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_.order(); }
  const std::vector<Polynomial>& elements() const { return elems_; }
  bool is_unit() const { return elems_.size() == 1 && elems_[0].is_constant(); }

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

 private:
  Ring ring_;
  std::vector<Polynomial> elems_;
};

// Reduced, monic, sorted by decreasing leading monomial.
GroebnerBasis groebner_basis(const Ring& ring, const std::vector<Polynomial>& gens, const MonomialOrder& order);
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& b);

class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(Ring r, std::vector<Polynomial> gens = {});

  static Ideal unit(const Ring& r) { return Ideal(r, {Polynomial::constant(r, 1)}); }
  static Ideal parse(const Ring& r, const std::vector<std::string>& gens);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  const GroebnerBasis& basis() const;
  GroebnerBasis basis(const MonomialOrder& order) const;

  bool contains(const Polynomial& f) const;
  // J ⊆ this
  bool contains(const Ideal& j) const;
  bool operator==(const Ideal& o) const { return contains(o) && o.contains(*this); }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
  bool is_trivial() const { return basis().is_unit(); }
  bool is_zero() const { return gens_.empty(); }

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal plus(const std::vector<Polynomial>& extra) const;
  // Generators replaced by the reduced basis in the ring's order.
  Ideal reduced() const { return Ideal(ring_, basis().elements()); }

  std::string to_string() const;
  std::string canonical() const;

 private:
  struct Cache;

  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

Ideal change_ring(const Ideal& i, const Ring& target);
Ideal substitute(const Ideal& i, const std::vector<Polynomial>& images, const Ring& target);

Ideal intersect(const Ideal& a, const Ideal& b);
Ideal quotient(const Ideal& i, const Polynomial& f);
Ideal quotient(const Ideal& i, const Ideal& j);

struct Saturation {
  Ideal ideal;
  int exponent = 0;
};
Saturation saturate(const Ideal& i, const Polynomial& g);
Saturation saturate(const Ideal& i, const Ideal& j);

// Keeps the variables not listed, in their original relative order.
Ideal eliminate(const Ideal& i, const std::vector<std::size_t>& drop);
Ideal eliminate(const Ideal& i, const std::vector<std::string>& drop);

// Throws EmptyVariety for the unit ideal.
int krull_dimension(const Ideal& i);
// nullopt stands for the empty variety.
std::optional<int> dimension(const Ideal& i);
std::vector<std::size_t> maximal_independent_set(const Ideal& i);

bool radical_contains(const Ideal& i, const Polynomial& f);
// V(a) ⊆ V(b): every generator of b lies in the radical of a.
bool locus_subset(const Ideal& a, const Ideal& b);

bool is_zero_dimensional(const Ideal& i);
std::vector<Exponents> standard_monomials(const Ideal& i);
std::size_t vector_space_dimension(const Ideal& i);

}  // namespace resint
