#include "resint/blowup.hpp"

#include <algorithm>
#include <set>

namespace resint {

namespace {

std::vector<Polynomial> identity_images(const Ring& r) {
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < r.size(); ++k) out.push_back(Polynomial::variable(r, k));
  return out;
}

Ideal with_relations(const Ideal& i, const Ideal& rel) { return i.plus(rel.generators()); }

std::string coordinates_label(const Ring& r, const Ideal& prime) {
  std::string s = "(";
  for (std::size_t v = 0; v < r.size(); ++v) {
    Polynomial nf = prime.basis().normal_form(Polynomial::variable(r, v));
    if (v) s += ", ";
    s += r.name(v) + "=" + scalar_to_string(nf.constant_value().value_or(0));
  }
  return s + ")";
}

}  // namespace

Space Space::affine(const Ring& r, const Ideal& relations, std::string label) {
  if (relations.is_trivial()) throw Error(ErrorKind::EmptyVariety, "the affine variety is empty");
  Space s;
  s.kind_ = Kind::Affine;
  s.ring_ = r;
  s.ideal_ = relations;
  s.charts_.push_back({std::move(label), r, relations});
  s.ownership_.push_back(Ideal(r));
  s.dim_ = krull_dimension(relations);
  return s;
}

Space Space::projective(const Ring& homogeneous, const Ideal& ideal) {
  ProjectiveVariety pv = ProjectiveVariety::make(homogeneous, ideal);
  auto d = projective_dimension(pv.ideal);
  if (!d) throw Error(ErrorKind::EmptyVariety, "the projective variety is empty");
  Space s;
  s.kind_ = Kind::Projective;
  s.ring_ = homogeneous;
  // Keep the caller's generators: they are the presentation used by the Jacobian criterion.
  s.ideal_ = ideal;
  s.dim_ = *d;
  for (std::size_t k = 0; k < homogeneous.size(); ++k) {
    Ring patch = pv.patch_ring(k);
    AffineChart c{homogeneous.name(k), patch, dehomogenize(ideal, k, patch)};
    if (c.relations.is_trivial()) continue;
    std::vector<Polynomial> own;
    for (std::size_t j = 0; j < k; ++j) own.push_back(Polynomial::variable(patch, j));
    s.charts_.push_back(std::move(c));
    s.ownership_.push_back(Ideal(patch, own));
  }
  return s;
}

namespace {

std::size_t pivot_of(const Space& s, std::size_t chart) { return s.ring().require(s.charts()[chart].label); }

}  // namespace

Ideal Space::to_chart(const Ideal& global, std::size_t chart) const {
  const AffineChart& c = charts_.at(chart);
  if (kind_ == Kind::Affine) return with_relations(global.ring() == c.ring ? global : change_ring(global, c.ring), c.relations);
  return with_relations(dehomogenize(global, pivot_of(*this, chart), c.ring), c.relations);
}

Ideal Space::to_global(const Ideal& chart_ideal, std::size_t chart) const {
  if (kind_ == Kind::Affine) return chart_ideal;
  return projective_closure(chart_ideal, pivot_of(*this, chart), ring_);
}

Ideal Space::union_of(const std::vector<Ideal>& parts) const {
  std::optional<Ideal> acc;
  for (const auto& p : parts) {
    if (is_empty(p)) continue;
    acc = acc ? intersect(*acc, p) : p;
  }
  if (!acc) return Ideal::unit(ring_);
  return normalize(*acc);
}

Ideal Space::normalize(const Ideal& global) const {
  Ideal full = with_relations(global, ideal_);
  if (kind_ == Kind::Affine) return full.reduced();
  return projective_saturate(full).reduced();
}

bool Space::is_empty(const Ideal& global) const {
  Ideal full = with_relations(global, ideal_);
  if (kind_ == Kind::Affine) return full.is_trivial();
  return projectively_empty(full);
}

std::optional<int> Space::dimension_of(const Ideal& global) const {
  Ideal full = with_relations(global, ideal_);
  if (kind_ == Kind::Affine) return resint::dimension(full);
  return projective_dimension(full);
}

bool Space::subset(const Ideal& a, const Ideal& b) const { return locus_subset(with_relations(a, ideal_), b); }

Ideal Space::singular_locus() const {
  std::vector<Ideal> parts;
  for (std::size_t c = 0; c < charts_.size(); ++c) parts.push_back(to_global(resint::singular_locus(charts_[c]), c));
  return union_of(parts);
}

std::string Space::point_key(std::size_t chart, const Ideal& prime) const {
  if (kind_ == Kind::Affine) return charts_.at(chart).label + "|" + prime.canonical();
  return "P|" + to_global(prime, chart).canonical();
}

std::string Space::point_label(std::size_t chart, const Ideal& prime) const {
  const AffineChart& c = charts_.at(chart);
  std::size_t deg = vector_space_dimension(prime);
  if (deg != 1) return "orbit of degree " + std::to_string(deg) + " " + to_global(prime, chart).canonical();
  if (kind_ == Kind::Affine) return coordinates_label(c.ring, prime);
  std::size_t pivot = pivot_of(*this, chart);
  std::string s = "[";
  std::size_t j = 0;
  for (std::size_t k = 0; k < ring_.size(); ++k) {
    if (k) s += ":";
    if (k == pivot) {
      s += "1";
      continue;
    }
    Polynomial nf = prime.basis().normal_form(Polynomial::variable(c.ring, j++));
    s += scalar_to_string(nf.constant_value().value_or(0));
  }
  return s + "]";
}

std::optional<CenterGraph> center_graph(const Ideal& center) {
  const Ring& r = center.ring();
  for (const MonomialOrder& o : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
    GroebnerBasis b = center.basis(o);
    if (b.is_unit() || b.elements().empty()) return std::nullopt;
    CenterGraph g;
    bool ok = true;
    for (const auto& e : b.elements()) {
      const Exponents& lm = e.lm();
      if (degree_of(lm) != 1) {
        ok = false;
        break;
      }
      std::size_t v = std::find(lm.begin(), lm.end(), 1u) - lm.begin();
      g.vars.push_back(v);
      g.coefs.push_back(e.lc());
      g.gens.push_back(e.reordered(r));
    }
    if (!ok) continue;
    for (std::size_t j = 0; j < g.gens.size() && ok; ++j) {
      for (std::size_t k = 0; k < g.gens.size(); ++k) {
        int expect = j == k ? 1 : 0;
        if (g.gens[k].degree(g.vars[j]) != expect) ok = false;
      }
      // The pivot variable appears only in the leading term of its own generator.
      Polynomial tail = g.gens[j] - Polynomial::variable(r, g.vars[j]).scaled(g.coefs[j]);
      if (tail.degree(g.vars[j]) > 0) ok = false;
    }
    if (ok) return g;
  }
  return std::nullopt;
}

std::vector<TowerChart> blowup_chart(const TowerChart& parent, int parent_index, const CenterGraph& g,
                                     std::size_t step) {
  const Ring& rp = parent.ring();
  std::size_t m = g.gens.size();
  std::vector<TowerChart> out;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::string> names = rp.names();
    std::set<std::string> used(names.begin(), names.end());
    std::vector<std::size_t> ratio;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::size_t v = g.vars[j];
      std::string n = names[v] + "'";
      while (used.count(n)) n += "'";
      used.insert(n);
      names[v] = n;
      ratio.push_back(v);
    }
    Ring r(names);
    // Polynomials free of the ratio-side variables map positionally.
    auto lift = [&](const Polynomial& f) { return substitute(f, identity_images(r), r); };
    Polynomial gi = lift(g.gens[i]);
    std::vector<Polynomial> to_parent = identity_images(r);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::size_t v = g.vars[j];
      Polynomial hj = lift(g.gens[j] - Polynomial::variable(rp, v).scaled(g.coefs[j]));
      to_parent[v] = (Polynomial::variable(r, v) * gi - hj).scaled(1 / g.coefs[j]);
    }

    std::vector<Polynomial> total, divided;
    for (const auto& f : parent.relations().generators()) {
      Polynomial t = substitute(f, to_parent, r);
      total.push_back(t);
      while (!t.is_zero()) {
        auto q = try_divide(t, gi);
        if (!q) break;
        t = *q;
      }
      divided.push_back(t);
    }
    Ideal rel(r, divided);
    if (!gi.is_constant()) {
      Ideal sat = saturate(Ideal(r, total), gi).ideal;
      if (!rel.contains(sat)) rel = sat;
    }
    if (rel.is_trivial()) continue;

    TowerChart c;
    c.label = parent.label + "/" + std::to_string(step + 1) + ":" + rp.name(g.vars[i]);
    c.chart = {c.label, r, rel};
    c.base_chart = parent.base_chart;
    c.parent = parent_index;
    c.to_parent = to_parent;
    for (const auto& b : parent.to_base) c.to_base.push_back(substitute(b, to_parent, r));
    std::vector<Polynomial> own;
    for (const auto& o : parent.ownership.generators()) own.push_back(substitute(o, to_parent, r));
    for (std::size_t j = 0; j < i; ++j) own.push_back(Polynomial::variable(r, g.vars[j]));
    c.ownership = Ideal(r, own);
    c.exceptional = gi;
    c.pivot = rp.name(g.vars[i]);
    c.ratio_vars = ratio;
    out.push_back(std::move(c));
  }
  return out;
}

Tower Tower::build(const Space& space, const std::vector<CenterSpec>& centers) {
  Tower t;
  t.space_ = space;
  std::vector<TowerChart> base;
  for (std::size_t k = 0; k < space.charts().size(); ++k) {
    TowerChart c;
    c.label = space.charts()[k].label;
    c.chart = space.charts()[k];
    c.base_chart = k;
    c.to_parent = identity_images(c.chart.ring);
    c.to_base = c.to_parent;
    c.ownership = space.ownership(k);
    base.push_back(std::move(c));
  }
  t.levels_.push_back(std::move(base));

  for (std::size_t n = 0; n < centers.size(); ++n) {
    const CenterSpec& spec = centers[n];
    BlowupStep step;
    step.spec = spec;
    step.center = spec.mode == CenterSpec::Mode::Proper ? t.proper_transform(spec.ideal, n)
                                                        : t.total_transform(spec.ideal, n);
    const auto& parents = t.levels_[n];
    std::vector<TowerChart> next;
    bool visible = false;
    for (std::size_t p = 0; p < parents.size(); ++p) {
      const Ideal& c = step.center[p];
      if (c.is_trivial()) {
        step.graph.push_back(std::nullopt);
        TowerChart same = parents[p];
        same.parent = static_cast<int>(p);
        same.to_parent = identity_images(same.ring());
        same.exceptional.reset();
        same.pivot.clear();
        same.ratio_vars.clear();
        next.push_back(std::move(same));
        continue;
      }
      auto g = center_graph(c);
      if (!g) {
        throw Error(ErrorKind::InvalidCenter, "center '" + spec.name + "' is not a regular-sequence graph in chart " +
                                                  parents[p].label + ": " + c.to_string());
      }
      int m = static_cast<int>(g->gens.size());
      if (m < 2) {
        throw Error(ErrorKind::InvalidCenter,
                    "center '" + spec.name + "' has codimension " + std::to_string(m) + " in chart " + parents[p].label);
      }
      if (step.m != 0 && step.m != m) {
        throw Error(ErrorKind::InvalidCenter, "center '" + spec.name + "' changes codimension between charts");
      }
      step.m = m;
      visible = true;
      step.graph.push_back(g);
      for (auto& c2 : blowup_chart(parents[p], static_cast<int>(p), *g, n)) next.push_back(std::move(c2));
    }
    if (!visible) throw Error(ErrorKind::InvalidCenter, "center '" + spec.name + "' is invisible in every chart");
    t.steps_.push_back(std::move(step));
    t.levels_.push_back(std::move(next));
  }
  return t;
}

Ideal Tower::total_transform_step(const Ideal& parent_ideal, const TowerChart& child) const {
  if (child.passed_through()) return parent_ideal;
  return with_relations(substitute(parent_ideal, child.to_parent, child.ring()), child.relations());
}

Ideal Tower::proper_transform_step(const Ideal& parent_ideal, const TowerChart& child) const {
  if (child.passed_through()) return parent_ideal;
  Ideal total = total_transform_step(parent_ideal, child);
  if (total.is_trivial()) return Ideal::unit(child.ring());
  return saturate(total, *child.exceptional).ideal;
}

std::vector<Ideal> Tower::total_transform(const Ideal& global, std::optional<std::size_t> level) const {
  std::size_t L = level.value_or(steps_.size());
  std::vector<Ideal> cur;
  for (std::size_t k = 0; k < space_.charts().size(); ++k) cur.push_back(space_.to_chart(global, k));
  for (std::size_t n = 0; n < L; ++n) {
    std::vector<Ideal> next;
    for (const auto& c : levels_[n + 1]) next.push_back(total_transform_step(cur[c.parent], c));
    cur = std::move(next);
  }
  return cur;
}

std::vector<Ideal> Tower::proper_transform(const Ideal& global, std::optional<std::size_t> level) const {
  std::size_t L = level.value_or(steps_.size());
  std::vector<Ideal> cur;
  for (std::size_t k = 0; k < space_.charts().size(); ++k) cur.push_back(space_.to_chart(global, k));
  for (std::size_t n = 0; n < L; ++n) {
    const BlowupStep& step = steps_[n];
    for (std::size_t p = 0; p < cur.size(); ++p) {
      if (step.center[p].is_trivial() || cur[p].is_trivial()) continue;
      if (locus_subset(cur[p], step.center[p])) {
        throw Error(ErrorKind::ContainedInCenter, "subvariety lies inside center '" + step.spec.name + "' (chart " +
                                                      levels_[n][p].label + ")");
      }
    }
    std::vector<Ideal> next;
    for (const auto& c : levels_[n + 1]) {
      const Ideal& pi = cur[c.parent];
      next.push_back(pi.is_trivial() ? Ideal::unit(c.ring()) : proper_transform_step(pi, c));
    }
    cur = std::move(next);
  }
  return cur;
}

Ideal Tower::pullback(const Ideal& global, std::size_t level, std::size_t chart) const {
  const TowerChart& c = levels_.at(level).at(chart);
  Ideal base = space_.to_chart(global, c.base_chart);
  return with_relations(substitute(base, c.to_base, c.ring()), c.relations());
}

Ideal Tower::image_in_base_chart(const Ideal& chart_ideal, std::size_t level, std::size_t chart) const {
  const TowerChart& c = levels_.at(level).at(chart);
  const AffineChart& b = space_.charts()[c.base_chart];
  Ideal full = with_relations(chart_ideal, c.relations());
  if (full.is_trivial()) return Ideal::unit(b.ring);
  if (level == 0) return with_relations(full, b.relations);
  std::vector<std::string> names = c.ring().names();
  std::vector<std::string> base_names;
  for (std::size_t k = 0; k < b.ring.size(); ++k) base_names.push_back("~b" + std::to_string(k));
  names.insert(names.end(), base_names.begin(), base_names.end());
  Ring big(names);
  std::vector<Polynomial> embed = identity_images(big);
  embed.resize(c.ring().size());
  std::vector<Polynomial> gens;
  for (const auto& g : full.generators()) gens.push_back(substitute(g, embed, big));
  for (std::size_t k = 0; k < b.ring.size(); ++k) {
    gens.push_back(Polynomial::variable(big, c.ring().size() + k) - substitute(c.to_base[k], embed, big));
  }
  std::vector<std::size_t> drop;
  for (std::size_t k = 0; k < c.ring().size(); ++k) drop.push_back(k);
  Ideal img = eliminate(Ideal(big, gens), drop);
  return with_relations(substitute(img, identity_images(b.ring), b.ring), b.relations);
}

Ideal Tower::image(const Ideal& chart_ideal, std::size_t level, std::size_t chart) const {
  const TowerChart& c = levels_.at(level).at(chart);
  Ideal img = image_in_base_chart(chart_ideal, level, chart);
  if (img.is_trivial()) return Ideal::unit(space_.ring());
  return space_.to_global(img, c.base_chart);
}

std::vector<Ideal> Tower::exceptional_divisors(std::size_t step) const {
  std::vector<Ideal> out;
  for (const auto& c : levels_.at(step + 1)) {
    if (c.passed_through()) out.push_back(Ideal::unit(c.ring()));
    else out.push_back(c.relations().plus({*c.exceptional}));
  }
  return out;
}

Tower::Blowdown Tower::blowdown(const RationalPoint& p, std::size_t level, std::size_t chart) const {
  const TowerChart& c = levels_.at(level).at(chart);
  const AffineChart& b = space_.charts()[c.base_chart];
  Blowdown out;
  out.base_chart = c.base_chart;
  if (p.residue_degree == 1 && p.coordinates.size() == c.ring().size()) {
    std::vector<Polynomial> gens;
    for (std::size_t k = 0; k < b.ring.size(); ++k) {
      Scalar v = evaluate(c.to_base[k], p.coordinates);
      gens.push_back(Polynomial::variable(b.ring, k) - Polynomial::constant(b.ring, v));
    }
    out.prime = Ideal(b.ring, gens).reduced();
    out.residue_degree = 1;
  } else {
    out.prime = image_in_base_chart(p.prime, level, chart).reduced();
    out.residue_degree = static_cast<int>(vector_space_dimension(out.prime));
  }
  out.key = space_.point_key(c.base_chart, out.prime);
  return out;
}

bool Tower::check_maps() const {
  for (std::size_t n = 1; n < levels_.size(); ++n) {
    for (const auto& c : levels_[n]) {
      const AffineChart& b = space_.charts()[c.base_chart];
      for (const auto& f : b.relations.generators()) {
        if (!c.relations().contains(substitute(f, c.to_base, c.ring()))) return false;
      }
      const TowerChart& parent = levels_[n - 1][c.parent];
      for (std::size_t k = 0; k < c.to_base.size(); ++k) {
        if (substitute(parent.to_base[k], c.to_parent, c.ring()) != c.to_base[k]) return false;
      }
    }
  }
  return true;
}

}  // namespace resint
