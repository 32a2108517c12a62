#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resint/blowup.hpp"
#include "resint/factor.hpp"

namespace resint {

enum class Rule { Seed, BC1, BC2, BC3, AC, Curve, Fourfold, Manual };

const char* rule_name(Rule r);
std::optional<Rule> parse_rule(const std::string& s);

struct StrataPiece {
  int codim = 0;
  Ideal ideal;  // global, normalized
  Rule rule = Rule::Manual;
  std::string source;
};

// User-supplied locus for a fiber the engine cannot analyse (non-conic fibers, jump loci).
struct Annotation {
  std::string center;
  Ideal locus;  // global
};

struct StrataConfig {
  std::set<Rule> rules;
  std::vector<std::pair<int, Ideal>> manual;
  std::vector<Annotation> annotations;
};

class Stratification {
 public:
  Stratification() = default;
  explicit Stratification(Space space) : space_(std::move(space)) {}

  const Space& space() const { return space_; }
  int dimension() const { return space_.dimension(); }
  const std::vector<StrataPiece>& pieces() const { return pieces_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  // Rules that produced the pieces (after expanding FOURFOLD).
  const std::set<Rule>& rules() const { return rules_; }
  void add_rules(const std::set<Rule>& r) { rules_.insert(r.begin(), r.end()); }

  // Adds a piece, keeping the deepest placement of each closed set.
  void add(StrataPiece p);
  void warn(std::string w) { warnings_.push_back(std::move(w)); }

  // Closed set X^i (unit ideal when empty; i <= 0 gives the whole space).
  Ideal level(int i) const;
  // dim(V(a) ∩ X^i), nullopt when empty.
  std::optional<int> incidence_dimension(const Ideal& a, int i) const;
  // Checks nesting and codimension; throws InconsistentStrata.
  void verify() const;

 private:
  Space space_;
  std::vector<StrataPiece> pieces_;
  std::vector<std::string> warnings_;
  std::set<Rule> rules_;
};

struct CenterImage {
  std::size_t step;
  Ideal image;  // global
  int image_dim;
  int center_dim;
};

CenterImage center_image(const Tower& t, std::size_t step);

// Singular locus of a radical equidimensional closed set via the Jacobian of all its generators.
Ideal jacobian_singular_locus(const Space& s, const Ideal& w);

// Loci in X over which the exceptional divisor of `step` has reducible or non-reduced fibers.
// Throws AnnotationRequired for fibers that are not conics, unless the center is annotated.
std::vector<Ideal> exceptional_split_loci(const Tower& t, std::size_t step, const std::vector<Annotation>& ann);

struct ConicFiberPoint {
  std::string key;
  std::string label;
  std::string chart;
  int residue_degree = 1;
  std::vector<Factor> factors;  // of the fiber conic in the ratio coordinates
  bool reducible() const;
};

struct ConicFibers {
  std::size_t step = 0;
  std::vector<std::string> charts;  // charts where the exceptional fibers are conics
  std::vector<Ideal> rank_loci;      // per conic chart, in the chart ring
  bool generic_irreducible = true;
  std::vector<Ideal> degenerate_loci;  // global
  std::vector<ConicFiberPoint> points;  // rational points of zero-dimensional degenerate loci
};

// Fiber structure of a conic bundle exceptional divisor; charts with other fibers are skipped.
ConicFibers conic_fibers(const Tower& t, std::size_t step);

std::vector<StrataPiece> fiber_dimension_strata(const Tower& t, const std::vector<Annotation>& ann = {});
std::vector<StrataPiece> reducible_fiber_loci(const Tower& t, Rule rule, const std::vector<Annotation>& ann = {});
std::vector<StrataPiece> image_singularity_loci(const Tower& t);
std::vector<StrataPiece> curve_rule_loci(const Tower& t, const std::vector<Annotation>& ann = {});

Stratification assemble_stratification(const Tower& t, const StrataConfig& cfg);
Stratification refine_stratifications(const Stratification& a, const Stratification& b);

}  // namespace resint
