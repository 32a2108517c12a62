#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resint/factor.hpp"
#include "resint/ideals.hpp"

namespace resint {

struct AffineChart {
  std::string label;
  Ring ring;
  // Generators form the presentation used by the Jacobian criterion.
  Ideal relations;
};

Polynomial determinant(std::vector<std::vector<Polynomial>> m);

Ideal singular_locus(const AffineChart& chart);
bool is_smooth(const AffineChart& chart);

// Determinant of the symmetric matrix of q homogenized in the fiber variables u, v.
Polynomial conic_determinant(const Polynomial& q, std::size_t u, std::size_t v);
// Locus in the ring without u, v where the conic drops rank.
Ideal conic_rank_locus(const Polynomial& q, std::size_t u, std::size_t v);

struct RationalPoint {
  std::string chart;
  Ring ring;
  // Empty unless residue_degree == 1.
  std::vector<Scalar> coordinates;
  int residue_degree = 1;
  // Maximal ideal of the point (reduced basis in the chart ring).
  Ideal prime;

  std::string key() const { return chart + "|" + prime.canonical(); }
  std::string to_string() const;
};

struct PointComponent {
  RationalPoint point;
  int multiplicity = 1;
};

// Minimal polynomial (monic, index = degree) of f in the finite-dimensional algebra ring/I.
std::vector<Scalar> minimal_polynomial(const Ideal& i, const Polynomial& f);
Polynomial squarefree_univariate(const Polynomial& f);

std::vector<PointComponent> zero_dim_decompose(const Ideal& i, const std::string& chart = "");

struct ProjectiveVariety {
  Ring ring;
  Ideal ideal;
  // Names of the dehomogenized variables in each coordinate patch; defaults to lowercase.
  std::vector<std::vector<std::string>> patch_names;

  static ProjectiveVariety make(const Ring& r, const Ideal& i);
  Ring patch_ring(std::size_t pivot) const;
  AffineChart chart(std::size_t pivot) const;
  std::vector<AffineChart> charts() const;
};

std::vector<std::string> default_patch_names(const Ring& homogeneous, std::size_t pivot);

Ideal irrelevant_ideal(const Ring& homogeneous);
bool is_homogeneous(const Ideal& i);
Ideal projective_saturate(const Ideal& i);
bool projectively_empty(const Ideal& i);
std::optional<int> projective_dimension(const Ideal& i);
// Patch variables correspond positionally to the non-pivot homogeneous variables.
Ideal dehomogenize(const Ideal& i, std::size_t pivot, const Ring& patch);
Ideal projective_closure(const Ideal& chart_ideal, std::size_t pivot, const Ring& homogeneous);

struct ProjectivePoint {
  // Normalized so that the first nonzero coordinate is 1; empty for non-rational points.
  std::vector<Scalar> coordinates;
  int residue_degree = 1;
  int multiplicity = 1;
  std::size_t patch = 0;
  Ideal ideal;
  std::string to_string() const;
};

// Points of a projectively zero-dimensional homogeneous ideal, each counted in the first patch containing it.
std::vector<ProjectivePoint> projective_points(const Ideal& i);

}  // namespace resint
