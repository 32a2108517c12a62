#include "resint/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "upoly.hpp"

namespace resint {

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  std::size_t n = m.size();
  if (n == 0) throw Error(ErrorKind::Precondition, "empty matrix");
  const Ring& r = m[0][0].ring();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial acc(r);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(std::move(minor));
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

namespace {

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Ideal singular_locus(const AffineChart& chart) {
  const Ideal& rel = chart.relations;
  const Ring& r = chart.ring;
  if (rel.is_trivial()) throw Error(ErrorKind::Precondition, "chart '" + chart.label + "' is empty");
  std::size_t k = rel.generators().size();
  int codim = static_cast<int>(r.size()) - krull_dimension(rel);
  if (static_cast<int>(k) != codim) {
    throw Error(ErrorKind::NonCompleteIntersection, "chart '" + chart.label + "' has " + std::to_string(k) +
                                                        " relations but codimension " + std::to_string(codim));
  }
  if (k == 0) return Ideal::unit(r);
  std::vector<std::vector<Polynomial>> jac(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < r.size(); ++v) jac[i].push_back(differentiate(rel.generators()[i], v));
  }
  std::vector<std::vector<std::size_t>> cols;
  std::vector<std::size_t> cur;
  combinations(r.size(), k, 0, cur, cols);
  std::vector<Polynomial> minors;
  for (const auto& c : cols) {
    std::vector<std::vector<Polynomial>> sub(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j : c) sub[i].push_back(jac[i][j]);
    }
    Polynomial d = determinant(std::move(sub));
    if (!d.is_zero()) minors.push_back(std::move(d));
  }
  return rel.plus(minors);
}

bool is_smooth(const AffineChart& chart) { return singular_locus(chart).is_trivial(); }

Polynomial conic_determinant(const Polynomial& q, std::size_t u, std::size_t v) {
  const Ring& r = q.ring();
  if (q.degree(u) > 2 || q.degree(v) > 2) throw Error(ErrorKind::Precondition, "not a conic in the fiber variables");
  auto coeffs = coefficients_in(q, {u, v});
  int top = -1;
  for (const auto& [e, c] : coeffs) top = std::max<int>(top, e[0] + e[1]);
  if (top != 2) throw Error(ErrorKind::Precondition, "not a conic: fiber degree " + std::to_string(top));
  auto get = [&](std::uint32_t a, std::uint32_t b) {
    auto it = coeffs.find(Exponents{a, b});
    return it == coeffs.end() ? Polynomial(r) : it->second;
  };
  Polynomial a = get(2, 0), b = get(1, 1), c = get(0, 2), d = get(1, 0), e = get(0, 1), f = get(0, 0);
  std::vector<std::vector<Polynomial>> m = {
      {a.scaled(2), b, d}, {b, c.scaled(2), e}, {d, e, f.scaled(2)}};
  return determinant(std::move(m));
}

Ideal conic_rank_locus(const Polynomial& q, std::size_t u, std::size_t v) {
  const Ring& r = q.ring();
  Polynomial det = conic_determinant(q, u, v);
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i != u && i != v) rest.push_back(r.name(i));
  }
  MonomialOrder o = r.order().kind == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : r.order();
  Ring base(rest, o);
  if (det.is_zero()) return Ideal(base);
  return Ideal(base, {change_ring(det, base)});
}

std::string RationalPoint::to_string() const {
  std::ostringstream os;
  if (residue_degree == 1) {
    os << "(";
    for (std::size_t i = 0; i < coordinates.size(); ++i) {
      if (i) os << ", ";
      os << ring.name(i) << "=" << scalar_to_string(coordinates[i]);
    }
    os << ")";
  } else {
    os << "orbit of degree " << residue_degree << " " << prime.canonical();
  }
  return os.str();
}

namespace {

struct Staircase {
  std::vector<Exponents> basis;
  std::map<Exponents, std::size_t> index;
};

Staircase staircase(const Ideal& i) {
  Staircase s;
  s.basis = standard_monomials(i);
  for (std::size_t k = 0; k < s.basis.size(); ++k) s.index[s.basis[k]] = k;
  return s;
}

std::vector<Scalar> coordinates_of(const Polynomial& nf, const Staircase& s) {
  std::vector<Scalar> v(s.basis.size());
  for (const auto& t : nf.terms()) {
    auto it = s.index.find(t.exp);
    if (it == s.index.end()) throw Error(ErrorKind::Precondition, "normal form outside the staircase");
    v[it->second] = t.coef;
  }
  return v;
}

Polynomial evaluate_univariate(const std::vector<Scalar>& q, const Polynomial& x) {
  Polynomial acc(x.ring());
  for (std::size_t k = q.size(); k-- > 0;) acc = acc * x + Polynomial::constant(x.ring(), q[k]);
  return acc;
}

Polynomial as_polynomial(const std::vector<Scalar>& q) {
  static const Ring r({"T"});
  std::vector<Term> ts;
  for (std::size_t k = 0; k < q.size(); ++k) ts.push_back({Exponents{static_cast<std::uint32_t>(k)}, q[k]});
  return Polynomial::from_terms(r, ts);
}

std::vector<Scalar> as_coefficients(const Polynomial& p) {
  std::vector<Scalar> q(std::max(p.total_degree(), 0) + 1);
  for (const auto& t : p.terms()) q[t.exp[0]] = t.coef;
  return q;
}

}  // namespace

std::vector<Scalar> minimal_polynomial(const Ideal& i, const Polynomial& f) {
  if (i.is_trivial()) return {1};
  Staircase s = staircase(i);
  const GroebnerBasis& b = i.basis();
  std::size_t dim = s.basis.size();
  Polynomial fr = f.reordered(i.ring());
  // Rows kept in echelon form, each tagged with its expression in powers of f.
  std::vector<std::vector<Scalar>> rows, combos;
  std::vector<std::size_t> pivots;
  Polynomial power = Polynomial::constant(i.ring(), 1);
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<Scalar> v = coordinates_of(b.normal_form(power), s);
    std::vector<Scalar> combo(k + 1);
    combo[k] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) v[j] -= c * rows[r][j];
      for (std::size_t j = 0; j < combos[r].size(); ++j) combo[j] -= c * combos[r][j];
    }
    std::size_t p = 0;
    while (p < dim && v[p] == 0) ++p;
    if (p == dim) {
      while (!combo.empty() && combo.back() == 0) combo.pop_back();
      Scalar lead = combo.back();
      for (auto& c : combo) c /= lead;
      return combo;
    }
    Scalar inv = 1 / v[p];
    for (auto& c : v) c *= inv;
    for (auto& c : combo) c *= inv;
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(p);
    power = b.normal_form(power * fr);
  }
  throw Error(ErrorKind::Precondition, "internal: minimal polynomial not found");
}

Polynomial squarefree_univariate(const Polynomial& f) {
  std::size_t var = 0;
  auto sup = f.support();
  for (std::size_t v = 0; v < sup.size(); ++v) {
    if (sup[v]) var = v;
  }
  upoly::QPoly q(std::max(f.degree(var), 0) + 1);
  for (const auto& t : f.terms()) q[t.exp[var]] += t.coef;
  upoly::trim(q);
  if (upoly::deg(q) <= 0) return f;
  upoly::QPoly g = upoly::q_gcd(q, upoly::q_derivative(q));
  upoly::QPoly s = upoly::q_monic(upoly::q_divmod(q, g).first);
  std::vector<Term> ts;
  for (std::size_t k = 0; k < s.size(); ++k) {
    Exponents e(f.ring().size(), 0);
    e[var] = static_cast<std::uint32_t>(k);
    ts.push_back({e, s[k]});
  }
  return Polynomial::from_terms(f.ring(), ts);
}

std::vector<PointComponent> zero_dim_decompose(const Ideal& i, const std::string& chart) {
  const Ring& r = i.ring();
  if (i.is_trivial()) return {};
  if (!is_zero_dimensional(i)) {
    throw Error(ErrorKind::Dimension, "zero-dimensional decomposition needs dimension 0, got " +
                                          std::to_string(krull_dimension(i)));
  }
  std::size_t total = vector_space_dimension(i);
  std::size_t n = r.size();

  std::vector<Polynomial> forms;
  for (std::size_t v = n; v-- > 0;) forms.push_back(Polynomial::variable(r, v));
  for (int k = 2; k <= 12; ++k) {
    Polynomial ell(r);
    Scalar c = 1;
    for (std::size_t v = 0; v < n; ++v) {
      ell += Polynomial::variable(r, v).scaled(c);
      c *= k;
    }
    forms.push_back(ell);
  }

  for (const auto& ell : forms) {
    std::vector<Scalar> mu = minimal_polynomial(i, ell);
    Factorization fac = factor(as_polynomial(mu));
    std::vector<PointComponent> out;
    std::size_t accounted = 0;
    bool separating = true;
    for (const auto& f : fac.factors) {
      std::vector<Scalar> q = as_coefficients(f.poly);
      Polynomial q_ell = evaluate_univariate(q, ell);
      Ideal iq = i.plus({q_ell});
      std::vector<Polynomial> extra = {q_ell};
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<Scalar> m = minimal_polynomial(iq, Polynomial::variable(r, v));
        Polynomial mv = evaluate_univariate(as_coefficients(squarefree_univariate(as_polynomial(m))),
                                            Polynomial::variable(r, v));
        extra.push_back(mv);
      }
      Ideal prime = i.plus(extra).reduced();
      std::size_t deg_p = vector_space_dimension(prime);
      if (deg_p != q.size() - 1) {
        separating = false;
        break;
      }
      Ideal primary = i.plus({pow(q_ell, static_cast<unsigned>(f.multiplicity))});
      std::size_t len = vector_space_dimension(primary);
      if (len % deg_p != 0) throw Error(ErrorKind::Precondition, "internal: local length not divisible by degree");
      accounted += len;
      RationalPoint pt;
      pt.chart = chart;
      pt.ring = r;
      pt.residue_degree = static_cast<int>(deg_p);
      pt.prime = prime;
      if (deg_p == 1) {
        for (std::size_t v = 0; v < n; ++v) {
          Polynomial nf = prime.basis().normal_form(Polynomial::variable(r, v));
          pt.coordinates.push_back(nf.constant_value().value());
        }
      }
      out.push_back({pt, static_cast<int>(len / deg_p)});
    }
    if (!separating) continue;
    if (accounted != total) throw Error(ErrorKind::Precondition, "internal: local lengths do not add up");
    std::sort(out.begin(), out.end(),
              [](const PointComponent& a, const PointComponent& b) { return a.point.key() < b.point.key(); });
    return out;
  }
  throw Error(ErrorKind::FactorizationScope, "no separating linear form found");
}

std::vector<std::string> default_patch_names(const Ring& homogeneous, std::size_t pivot) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < homogeneous.size(); ++v) {
    if (v == pivot) continue;
    std::string s = homogeneous.name(v);
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == homogeneous.name(v)) s += "_";
    out.push_back(s);
  }
  return out;
}

ProjectiveVariety ProjectiveVariety::make(const Ring& r, const Ideal& i) {
  if (!is_homogeneous(i)) throw Error(ErrorKind::Precondition, "projective variety needs homogeneous generators");
  ProjectiveVariety p{r, projective_saturate(i), {}};
  for (std::size_t v = 0; v < r.size(); ++v) p.patch_names.push_back(default_patch_names(r, v));
  return p;
}

Ring ProjectiveVariety::patch_ring(std::size_t pivot) const { return Ring(patch_names.at(pivot)); }

AffineChart ProjectiveVariety::chart(std::size_t pivot) const {
  Ring pr = patch_ring(pivot);
  Ideal local = dehomogenize(ideal, pivot, pr);
  return {ring.name(pivot), pr, local};
}

std::vector<AffineChart> ProjectiveVariety::charts() const {
  std::vector<AffineChart> out;
  for (std::size_t v = 0; v < ring.size(); ++v) out.push_back(chart(v));
  return out;
}

Ideal irrelevant_ideal(const Ring& homogeneous) {
  std::vector<Polynomial> g;
  for (std::size_t v = 0; v < homogeneous.size(); ++v) g.push_back(Polynomial::variable(homogeneous, v));
  return Ideal(homogeneous, g);
}

bool is_homogeneous(const Ideal& i) {
  return std::all_of(i.generators().begin(), i.generators().end(),
                     [](const Polynomial& p) { return resint::is_homogeneous(p); });
}

Ideal projective_saturate(const Ideal& i) {
  if (!is_homogeneous(i)) throw Error(ErrorKind::Precondition, "non-homogeneous generator in projective ideal");
  if (i.is_zero()) return i;
  return saturate(i, irrelevant_ideal(i.ring())).ideal;
}

bool projectively_empty(const Ideal& i) { return projective_saturate(i).is_trivial(); }

std::optional<int> projective_dimension(const Ideal& i) {
  if (!is_homogeneous(i)) throw Error(ErrorKind::Precondition, "non-homogeneous generator in projective ideal");
  auto d = dimension(i);
  if (!d || *d == 0) return std::nullopt;
  return *d - 1;
}

Ideal dehomogenize(const Ideal& i, std::size_t pivot, const Ring& patch) {
  if (!is_homogeneous(i)) throw Error(ErrorKind::Precondition, "non-homogeneous generator in projective ideal");
  std::vector<Polynomial> g;
  for (const auto& p : i.generators()) g.push_back(dehomogenize(p, pivot, patch));
  return Ideal(patch, g);
}

Ideal projective_closure(const Ideal& chart_ideal, std::size_t pivot, const Ring& homogeneous) {
  const Ring& patch = chart_ideal.ring();
  if (patch.size() + 1 != homogeneous.size()) throw Error(ErrorKind::Precondition, "patch and projective ring disagree");
  GroebnerBasis b = chart_ideal.basis(MonomialOrder::grevlex());
  std::vector<Polynomial> out;
  for (const auto& f : b.elements()) {
    int d = f.total_degree();
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
      Exponents e(homogeneous.size(), 0);
      for (std::size_t k = 0; k < t.exp.size(); ++k) e[k < pivot ? k : k + 1] = t.exp[k];
      e[pivot] = static_cast<std::uint32_t>(d - static_cast<int>(degree_of(t.exp)));
      ts.push_back({e, t.coef});
    }
    out.push_back(Polynomial::from_terms(homogeneous, ts));
  }
  return Ideal(homogeneous, out);
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream os;
  if (residue_degree == 1) {
    os << "[";
    for (std::size_t k = 0; k < coordinates.size(); ++k) {
      if (k) os << ":";
      os << scalar_to_string(coordinates[k]);
    }
    os << "]";
  } else {
    os << "orbit of degree " << residue_degree << " " << ideal.canonical();
  }
  return os.str();
}

std::vector<ProjectivePoint> projective_points(const Ideal& i) {
  const Ring& h = i.ring();
  if (!is_homogeneous(i)) throw Error(ErrorKind::Precondition, "non-homogeneous generator in projective ideal");
  auto pd = projective_dimension(i);
  if (!pd) return {};
  if (*pd != 0) throw Error(ErrorKind::Dimension, "projective points need projective dimension 0");
  std::vector<ProjectivePoint> out;
  for (std::size_t pivot = 0; pivot < h.size(); ++pivot) {
    Ring patch(default_patch_names(h, pivot));
    Ideal local = dehomogenize(i, pivot, patch);
    // Coordinates before the pivot vanish: the point belongs to an earlier patch otherwise.
    std::vector<Polynomial> own;
    for (std::size_t k = 0; k < pivot; ++k) own.push_back(Polynomial::variable(patch, k));
    local = local.plus(own);
    if (local.is_trivial()) continue;
    for (auto& pc : zero_dim_decompose(local, h.name(pivot))) {
      ProjectivePoint p;
      p.patch = pivot;
      p.residue_degree = pc.point.residue_degree;
      p.multiplicity = pc.multiplicity;
      p.ideal = projective_closure(pc.point.prime, pivot, h);
      if (p.residue_degree == 1) {
        for (std::size_t k = 0; k < h.size(); ++k) {
          if (k == pivot) p.coordinates.push_back(1);
          else p.coordinates.push_back(pc.point.coordinates[k < pivot ? k : k - 1]);
        }
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace resint
