#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resint/strata.hpp"

namespace resint {

struct Perversity {
  std::vector<int> p;  // p[0] is p_1

  static Perversity zero(int d) { return {std::vector<int>(static_cast<std::size_t>(d), 0)}; }
  static Perversity top(int d);
  // "0,1,1" or "(0,1,1)"
  static Perversity parse(const std::string& s);

  int size() const { return static_cast<int>(p.size()); }
  int at(int i) const { return p.at(static_cast<std::size_t>(i - 1)); }
  // p_1 = 0 and unit steps.
  bool is_standard() const;
  bool operator==(const Perversity& o) const { return p == o.p; }
  bool operator<=(const Perversity& o) const;
  std::string to_string() const;
};

Perversity operator+(const Perversity& a, const Perversity& b);

struct CycleComponent {
  Ideal ideal;
  int dim = 0;
  int mult = 1;
};

struct Cycle {
  std::string name;
  std::vector<CycleComponent> components;

  int dimension() const { return components.empty() ? -1 : components.front().dim; }
  bool empty() const { return components.empty(); }
  Cycle scaled(int k) const;
  std::string to_string() const;
};

// Validates that the ideal has the given dimension on the space (or computes it when dim < 0).
Cycle make_cycle(const Space& s, std::string name, const Ideal& ideal, int mult = 1, int dim = -1);
void validate_cycle(const Space& s, const Cycle& c);
// Merges equal components; drops zero multiplicities.
Cycle add_cycles(const Space& s, const Cycle& a, const Cycle& b);

// Components of V(ideal) of dimension r with their generic multiplicities.
// Splits along factorizations of basis elements; throws FactorizationScope past the factoring limits.
std::vector<CycleComponent> decompose_cycle(const Space& s, const Ideal& ideal, int r);

struct LevelCheck {
  int level = 0;
  std::optional<int> dim;  // nullopt = empty incidence
  int bound = 0;
  bool pass = true;
};

struct PerversityReport {
  int r = 0;
  Perversity perversity;
  std::vector<LevelCheck> levels;
  bool pass = true;
  bool nonstandard = false;
};

PerversityReport perversity_check(const Cycle& a, const Stratification& s, const Perversity& p);
// Least standard perversity the cycle satisfies; nullopt when a component lies in X^1.
std::optional<Perversity> minimal_perversity(const Cycle& a, const Stratification& s);

struct CycleFamily {
  std::string name;
  std::string parameter;
  Ideal total;  // ring: space ring extended by the parameter (last variable)
  std::vector<Scalar> marked;
  int dim = 0;
};

CycleFamily make_family(const Space& s, std::string name, std::string parameter, const std::vector<std::string>& gens,
                        std::vector<Scalar> marked, int dim);

Cycle family_fiber(const Space& s, const CycleFamily& f, const Scalar& value);

enum class FamilyMode { Weak, Strong };

struct SpecialFiber {
  Polynomial locus;  // irreducible polynomial in the parameter
  std::vector<LevelCheck> levels;
  bool pass = true;
};

struct FamilyReport {
  FamilyMode mode = FamilyMode::Weak;
  std::vector<std::pair<Scalar, PerversityReport>> marked;
  std::vector<LevelCheck> generic;  // strong mode only
  std::vector<SpecialFiber> special;
  bool pass = true;
};

FamilyReport family_perversity_check(const Space& sp, const CycleFamily& f, const Stratification& s,
                                     const Perversity& p, FamilyMode mode);

struct ErrorComponent {
  std::string chart;
  std::size_t chart_index = 0;
  Ideal ideal;  // chart ring
  int dim = 0;
  int mult = 0;  // 0 when only the support is known
  Ideal image;   // global
  bool over_singular_locus = true;
};

struct ErrorTerm {
  Scalar value;
  std::vector<ErrorComponent> components;
  bool support_only = false;
  bool over_singular_locus() const;
};

// Fiber of the transformed family minus the transform of the fiber, per top chart.
ErrorTerm error_terms(const Tower& t, const CycleFamily& f, const Scalar& value);

}  // namespace resint
