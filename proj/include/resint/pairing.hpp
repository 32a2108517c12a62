#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resint/cycles.hpp"

namespace resint {

struct ZeroCyclePoint {
  std::string key;
  std::string label;
  std::size_t chart = 0;
  RationalPoint point;
  int mult = 0;
};

struct ZeroCycle {
  std::vector<ZeroCyclePoint> points;  // sorted by key

  long degree() const;
  bool empty() const { return points.empty(); }
  bool same_points(const ZeroCycle& o) const;
  std::string to_string() const;
};

// A cycle carried to the top of a tower: per component, one ideal per top chart.
struct TopCycle {
  struct Component {
    std::vector<Ideal> charts;
    int dim = 0;
    int mult = 1;
  };
  std::string name;
  std::vector<Component> components;
  int dimension() const { return components.empty() ? -1 : components.front().dim; }
};

TopCycle transform_cycle(const Tower& t, const Cycle& a);

struct ChartIncidence {
  std::string chart;
  Ideal ideal;
};

struct Intersection {
  ZeroCycle cycle;
  std::vector<ChartIncidence> charts;  // non-empty incidences only
};

// Zero-dimensional intersection on the top charts; multiplicities are local lengths.
Intersection intersect_zero_dim(const Tower& t, const TopCycle& a, const TopCycle& b);
ZeroCycle pushforward(const Tower& t, const ZeroCycle& z);

struct PairingOptions {
  bool strict_complementarity = false;
  bool allow_nonstandard = false;
};

struct PairingReport {
  PerversityReport first;
  PerversityReport second;
  bool complementary = true;
  std::vector<std::string> hypotheses;  // theorems whose hypotheses hold
  std::vector<std::string> warnings;
  Intersection upstairs;
  ZeroCycle pushed;
  long degree = 0;
};

// Names of the pairing theorems whose stratification and perversity hypotheses hold.
std::vector<std::string> theorem_hypotheses(const Stratification& s, int r, int q_dim, const Perversity& p,
                                            const Perversity& q);

PairingReport pair(const Tower& t, const Stratification& s, const Cycle& a, const Cycle& b, const Perversity& p,
                   const Perversity& q, const PairingOptions& opt = {});

enum class Verdict { Consistent, Inconsistent, FamilyRejected, CycleRejected };
const char* verdict_name(Verdict v);

struct AuditReport {
  Verdict verdict = Verdict::Consistent;
  FamilyReport family;
  PerversityReport second;
  std::vector<Scalar> values;
  std::vector<std::optional<PairingReport>> pairs;
  // Equal degrees with different pushed points still count as consistent; this records the distinction.
  bool same_points = true;
  std::vector<ErrorTerm> errors;
  std::vector<std::string> hypotheses;
  std::vector<std::string> notes;
};

AuditReport audit_well_definedness(const Tower& t, const Stratification& s, const CycleFamily& f, const Cycle& b,
                                   const Perversity& p, const Perversity& q, FamilyMode mode,
                                   const PairingOptions& opt = {});

struct TowerComparison {
  PairingReport first;
  PairingReport second;
  bool equal_degree = false;
  bool equal_points = false;
  bool equal() const { return equal_degree && equal_points; }
};

// The second tower must extend the first.
TowerComparison compare_towers(const Tower& t1, const Tower& t2, const Stratification& s, const Cycle& a,
                               const Cycle& b, const Perversity& p, const Perversity& q,
                               const PairingOptions& opt = {});

// Single smooth center on a smooth variety: incidence perversities of both cycles with the center,
// the bound p + q <= c - 1, and pushed versus direct degrees.
struct SmoothCaseReport {
  int codim = 0;
  int p = 0;
  int q = 0;
  bool hypothesis = true;
  long pushed_degree = 0;
  long direct_degree = 0;
  bool agree() const { return pushed_degree == direct_degree; }
};

SmoothCaseReport smooth_case_check(const Tower& t, const Cycle& a, const Cycle& b);

}  // namespace resint
