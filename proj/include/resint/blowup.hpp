#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resint/geometry.hpp"

namespace resint {

// The variety being resolved: a single affine chart, or a projective hypersurface-style
// variety covered by its coordinate patches.
class Space {
 public:
  enum class Kind { Affine, Projective };

  static Space affine(const Ring& r, const Ideal& relations, std::string label = "X");
  static Space projective(const Ring& homogeneous, const Ideal& ideal);

  Kind kind() const { return kind_; }
  bool is_projective() const { return kind_ == Kind::Projective; }
  const Ring& ring() const { return ring_; }
  const Ideal& ideal() const { return ideal_; }
  const std::vector<AffineChart>& charts() const { return charts_; }
  // Closed condition selecting the points a chart is responsible for (earlier patch coordinates vanish).
  const Ideal& ownership(std::size_t chart) const { return ownership_.at(chart); }
  int dimension() const { return dim_; }

  // Global closed sets are ideals in ring(); homogeneous in the projective case.
  Ideal to_chart(const Ideal& global, std::size_t chart) const;
  Ideal to_global(const Ideal& chart_ideal, std::size_t chart) const;
  // Union of closed sets (intersection of ideals), saturated in the projective case.
  Ideal union_of(const std::vector<Ideal>& parts) const;
  Ideal normalize(const Ideal& global) const;
  bool is_empty(const Ideal& global) const;
  // Dimension of V(global) ∩ X; nullopt when empty.
  std::optional<int> dimension_of(const Ideal& global) const;
  bool subset(const Ideal& a, const Ideal& b) const;
  Ideal singular_locus() const;
  std::string point_key(std::size_t chart, const Ideal& prime) const;
  std::string point_label(std::size_t chart, const Ideal& prime) const;

 private:
  Kind kind_ = Kind::Affine;
  Ring ring_;
  Ideal ideal_;
  std::vector<AffineChart> charts_;
  std::vector<Ideal> ownership_;
  int dim_ = 0;
};

struct CenterSpec {
  enum class Mode { Proper, Total };
  std::string name;
  Ideal ideal;  // global coordinates
  Mode mode = Mode::Proper;
};

struct TowerChart {
  std::string label;
  AffineChart chart;
  std::size_t base_chart = 0;
  int parent = -1;  // index in the previous level
  // Images of the parent (resp. base chart) variables in this chart's ring.
  std::vector<Polynomial> to_parent;
  std::vector<Polynomial> to_base;
  Ideal ownership;
  // Set on charts produced by a blowup at this level.
  std::optional<Polynomial> exceptional;
  std::string pivot;
  std::vector<std::size_t> ratio_vars;

  const Ring& ring() const { return chart.ring; }
  const Ideal& relations() const { return chart.relations; }
  bool passed_through() const { return !exceptional.has_value(); }
};

struct CenterGraph {
  // g_j = c_j * v_j + h_j with the v_j distinct variables absent from every h_k.
  std::vector<Polynomial> gens;
  std::vector<std::size_t> vars;
  std::vector<Scalar> coefs;
};

struct BlowupStep {
  CenterSpec spec;
  // Per parent chart: the center in that chart (unit ideal when invisible).
  std::vector<Ideal> center;
  std::vector<std::optional<CenterGraph>> graph;
  int m = 0;
};

// Presents a center as a graph over coordinate variables; nullopt when impossible.
std::optional<CenterGraph> center_graph(const Ideal& center);

// Charts of the blowup of one chart along a center, one per pivot; empty charts are dropped.
std::vector<TowerChart> blowup_chart(const TowerChart& parent, int parent_index, const CenterGraph& g,
                                     std::size_t step);

class Tower {
 public:
  static Tower build(const Space& space, const std::vector<CenterSpec>& centers);

  const Space& space() const { return space_; }
  std::size_t size() const { return steps_.size(); }
  const std::vector<BlowupStep>& steps() const { return steps_; }
  // levels()[0] are the base charts; levels()[n+1] the charts after step n.
  const std::vector<std::vector<TowerChart>>& levels() const { return levels_; }
  const std::vector<TowerChart>& top() const { return levels_.back(); }

  // Per chart at `level` (default top): transforms of a global ideal.
  std::vector<Ideal> total_transform(const Ideal& global, std::optional<std::size_t> level = std::nullopt) const;
  std::vector<Ideal> proper_transform(const Ideal& global, std::optional<std::size_t> level = std::nullopt) const;
  // One-step transforms of a chart ideal.
  Ideal total_transform_step(const Ideal& parent_ideal, const TowerChart& child) const;
  Ideal proper_transform_step(const Ideal& parent_ideal, const TowerChart& child) const;

  // Pull a global ideal back to a chart at any level (total transform composed with the base chart map).
  Ideal pullback(const Ideal& global, std::size_t level, std::size_t chart) const;
  // Image closure in base chart coordinates of a closed subset of a chart.
  Ideal image_in_base_chart(const Ideal& chart_ideal, std::size_t level, std::size_t chart) const;
  // Image closure in global coordinates.
  Ideal image(const Ideal& chart_ideal, std::size_t level, std::size_t chart) const;

  // Exceptional divisor of step n in each chart of level n+1 (unit ideal on passed-through charts).
  std::vector<Ideal> exceptional_divisors(std::size_t step) const;

  struct Blowdown {
    std::size_t base_chart;
    Ideal prime;  // base chart ring
    int residue_degree;
    std::string key;
  };
  Blowdown blowdown(const RationalPoint& p, std::size_t level, std::size_t chart) const;

  // Composition of every to_parent map reproduces to_base; relations pull back into chart relations.
  bool check_maps() const;

 private:
  Space space_;
  std::vector<BlowupStep> steps_;
  std::vector<std::vector<TowerChart>> levels_;
};

}  // namespace resint
