#include "resint/strata.hpp"

#include <algorithm>

namespace resint {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Seed: return "SEED";
    case Rule::BC1: return "BC1";
    case Rule::BC2: return "BC2";
    case Rule::BC3: return "BC3";
    case Rule::AC: return "AC";
    case Rule::Curve: return "CURVE";
    case Rule::Fourfold: return "FOURFOLD";
    case Rule::Manual: return "MANUAL";
  }
  return "?";
}

std::optional<Rule> parse_rule(const std::string& s) {
  for (Rule r : {Rule::Seed, Rule::BC1, Rule::BC2, Rule::BC3, Rule::AC, Rule::Curve, Rule::Fourfold, Rule::Manual}) {
    if (s == rule_name(r)) return r;
  }
  return std::nullopt;
}

void Stratification::add(StrataPiece p) {
  if (space_.is_empty(p.ideal)) return;
  p.ideal = space_.normalize(p.ideal);
  int d = space_.dimension();
  if (p.codim > d) {
    warn(std::string(rule_name(p.rule)) + " piece from " + p.source + " clamped from codimension " +
         std::to_string(p.codim) + " to " + std::to_string(d));
    p.codim = d;
  }
  if (p.codim < 1) p.codim = 1;
  for (auto& q : pieces_) {
    if (!space_.subset(p.ideal, q.ideal) || !space_.subset(q.ideal, p.ideal)) continue;
    if (p.codim > q.codim) {
      q = std::move(p);
    } else if (p.codim == q.codim && p.ideal.contains(q.ideal) && !q.ideal.contains(p.ideal)) {
      q.ideal = std::move(p.ideal);
    }
    return;
  }
  pieces_.push_back(std::move(p));
  std::stable_sort(pieces_.begin(), pieces_.end(), [](const StrataPiece& a, const StrataPiece& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    return a.ideal.canonical() < b.ideal.canonical();
  });
}

Ideal Stratification::level(int i) const {
  if (i <= 0) return space_.normalize(Ideal(space_.ring()));
  std::vector<Ideal> parts;
  for (const auto& p : pieces_) {
    if (p.codim >= i) parts.push_back(p.ideal);
  }
  return space_.union_of(parts);
}

std::optional<int> Stratification::incidence_dimension(const Ideal& a, int i) const {
  if (i <= 0) return space_.dimension_of(a);
  std::optional<int> best;
  for (const auto& p : pieces_) {
    if (p.codim < i) continue;
    auto d = space_.dimension_of(a + p.ideal);
    if (d && (!best || *d > *best)) best = d;
  }
  return best;
}

void Stratification::verify() const {
  int d = space_.dimension();
  for (const auto& p : pieces_) {
    auto dim = space_.dimension_of(p.ideal);
    if (dim && *dim > d - p.codim) {
      throw Error(ErrorKind::InconsistentStrata, std::string(rule_name(p.rule)) + " piece " + p.ideal.to_string() +
                                                     " has dimension " + std::to_string(*dim) + " but codimension label " +
                                                     std::to_string(p.codim));
    }
  }
  for (int i = 1; i < d; ++i) {
    Ideal outer = level(i), inner = level(i + 1);
    if (!space_.is_empty(inner) && !space_.subset(inner, outer)) {
      throw Error(ErrorKind::InconsistentStrata, "level " + std::to_string(i + 1) + " is not inside level " + std::to_string(i));
    }
  }
}

CenterImage center_image(const Tower& t, std::size_t step) {
  const BlowupStep& s = t.steps().at(step);
  std::vector<Ideal> parts;
  int cdim = -1;
  for (std::size_t p = 0; p < s.center.size(); ++p) {
    if (s.center[p].is_trivial()) continue;
    parts.push_back(t.image(s.center[p], step, p));
    cdim = std::max(cdim, krull_dimension(s.center[p]));
  }
  CenterImage ci;
  ci.step = step;
  ci.image = t.space().union_of(parts);
  ci.image_dim = t.space().dimension_of(ci.image).value_or(-1);
  ci.center_dim = cdim;
  return ci;
}

namespace {

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

bool annotated(const std::vector<Annotation>& ann, const std::string& center) {
  return std::any_of(ann.begin(), ann.end(), [&](const Annotation& a) { return a.center == center; });
}

// The chart relation restricted to the exceptional divisor: the pivot coordinate is solved from g_i = 0.
Polynomial fiber_equation(const Tower& t, std::size_t step, std::size_t k) {
  const BlowupStep& s = t.steps().at(step);
  const TowerChart& c = t.levels()[step + 1][k];
  const auto& rel = c.relations().generators();
  const CenterGraph& g = *s.graph[c.parent];
  std::size_t i = 0;
  const Ring& rp = t.levels()[step][c.parent].ring();
  while (i < g.vars.size() && rp.name(g.vars[i]) != c.pivot) ++i;
  std::size_t vi = g.vars[i];
  std::vector<Polynomial> lift;
  for (std::size_t v = 0; v < c.ring().size(); ++v) lift.push_back(Polynomial::variable(c.ring(), v));
  Polynomial hi = substitute(g.gens[i] - Polynomial::variable(rp, vi).scaled(g.coefs[i]), lift, c.ring());
  Polynomial q = substitute_var(rel[0], vi, hi.scaled(-1 / g.coefs[i]));
  return q;
}

}  // namespace

Ideal jacobian_singular_locus(const Space& s, const Ideal& w) {
  Ideal W = s.normalize(w);
  auto dim = s.dimension_of(W);
  if (!dim) return Ideal::unit(s.ring());
  std::size_t n = s.ring().size();
  int cone = *dim + (s.is_projective() ? 1 : 0);
  std::size_t c = n - static_cast<std::size_t>(cone);
  if (c == 0) return Ideal::unit(s.ring());
  const auto& gens = W.generators();
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  choose(gens.size(), c, 0, cur, rows);
  choose(n, c, 0, cur, cols);
  std::vector<Polynomial> minors;
  for (const auto& rs : rows) {
    for (const auto& cs : cols) {
      std::vector<std::vector<Polynomial>> m;
      for (std::size_t r : rs) {
        std::vector<Polynomial> row;
        for (std::size_t v : cs) row.push_back(differentiate(gens[r], v));
        m.push_back(std::move(row));
      }
      Polynomial det = determinant(std::move(m));
      if (!det.is_zero()) minors.push_back(det);
    }
  }
  Ideal sing = W.plus(minors);
  if (s.is_empty(sing)) return Ideal::unit(s.ring());
  return s.normalize(sing);
}

std::vector<Ideal> exceptional_split_loci(const Tower& t, std::size_t step, const std::vector<Annotation>& ann) {
  const BlowupStep& s = t.steps().at(step);
  bool has_ann = annotated(ann, s.spec.name);
  std::vector<Ideal> out;
  const auto& charts = t.levels()[step + 1];
  for (std::size_t k = 0; k < charts.size(); ++k) {
    const TowerChart& c = charts[k];
    if (c.passed_through()) continue;
    const auto& rel = c.relations().generators();
    if (rel.empty()) continue;
    auto need = [&](const std::string& why) {
      if (!has_ann) {
        throw Error(ErrorKind::AnnotationRequired,
                    "exceptional fibers over center '" + s.spec.name + "' in chart " + c.label + " " + why);
      }
    };
    if (rel.size() != 1) {
      need("are cut out by several equations");
      continue;
    }
    Polynomial q = fiber_equation(t, step, k);

    int fdeg = 0;
    for (const auto& term : q.terms()) {
      int e = 0;
      for (std::size_t u : c.ratio_vars) e += static_cast<int>(term.exp[u]);
      fdeg = std::max(fdeg, e);
    }
    if (fdeg <= 1) continue;
    if (c.ratio_vars.size() != 2 || fdeg != 2) {
      need("are not conics");
      continue;
    }
    Ideal rank = conic_rank_locus(q, c.ratio_vars[0], c.ratio_vars[1]);
    if (rank.is_zero() || rank.is_trivial()) continue;
    Ideal over = change_ring(rank, c.ring()).plus({*c.exceptional});
    over = over.plus(rel);
    if (over.is_trivial()) continue;
    out.push_back(t.image(over, step + 1, k));
  }
  for (const auto& a : ann) {
    if (a.center == s.spec.name) out.push_back(a.locus);
  }
  return out;
}

bool ConicFiberPoint::reducible() const {
  int n = 0;
  for (const auto& f : factors) n += f.multiplicity;
  return n > 1;
}

ConicFibers conic_fibers(const Tower& t, std::size_t step) {
  const Space& sp = t.space();
  ConicFibers out;
  out.step = step;
  const auto& charts = t.levels().at(step + 1);
  std::set<std::string> seen;
  for (std::size_t k = 0; k < charts.size(); ++k) {
    const TowerChart& c = charts[k];
    if (c.passed_through() || c.relations().generators().size() != 1 || c.ratio_vars.size() != 2) continue;
    Polynomial q = fiber_equation(t, step, k);
    int fdeg = 0;
    for (const auto& term : q.terms()) {
      int e = 0;
      for (std::size_t u : c.ratio_vars) e += static_cast<int>(term.exp[u]);
      fdeg = std::max(fdeg, e);
    }
    if (fdeg != 2) continue;
    out.charts.push_back(c.label);
    Ideal rank = conic_rank_locus(q, c.ratio_vars[0], c.ratio_vars[1]);
    out.rank_loci.push_back(rank);
    if (rank.is_zero()) {
      out.generic_irreducible = false;
      continue;
    }
    Ideal over = change_ring(rank, c.ring()).plus({*c.exceptional}) + c.relations();
    if (over.is_trivial()) continue;
    Ideal img = sp.normalize(t.image(over, step + 1, k));
    bool known = false;
    for (const auto& l : out.degenerate_loci) known = known || (sp.subset(l, img) && sp.subset(img, l));
    if (!known) out.degenerate_loci.push_back(img);
    if (sp.dimension_of(img).value_or(-1) != 0) continue;

    std::vector<std::string> others;
    for (std::size_t v = 0; v < c.ring().size(); ++v) {
      if (v != c.ratio_vars[0] && v != c.ratio_vars[1]) others.push_back(c.ring().name(v));
    }
    for (std::size_t b = 0; b < sp.charts().size(); ++b) {
      for (const auto& pc : zero_dim_decompose(sp.to_chart(img, b), sp.charts()[b].label)) {
        Ideal global = sp.to_global(pc.point.prime, b);
        std::string key = sp.point_key(b, pc.point.prime);
        if (!seen.insert(key).second) continue;
        Ideal fiber = t.pullback(global, step + 1, k) + c.relations();
        if (fiber.is_trivial()) continue;
        Ideal eq = eliminate(fiber, others);
        ConicFiberPoint p;
        p.key = key;
        p.label = sp.point_label(b, pc.point.prime);
        p.chart = c.label;
        p.residue_degree = pc.point.residue_degree;
        if (pc.point.residue_degree == 1 && eq.reduced().generators().size() == 1) {
          p.factors = factor(eq.reduced().generators()[0]).factors;
        }
        out.points.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<StrataPiece> fiber_dimension_strata(const Tower& t, const std::vector<Annotation>& ann) {
  const Space& sp = t.space();
  int d = sp.dimension();
  std::vector<StrataPiece> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const BlowupStep& s = t.steps()[n];
    CenterImage ci = center_image(t, n);
    if (ci.image_dim < 0) continue;
    int m = ci.image_dim, g = ci.center_dim - m;
    out.push_back({d - m, ci.image, Rule::BC1, s.spec.name});

    std::vector<Ideal> candidates;
    for (const auto& a : ann) {
      if (a.center == s.spec.name) candidates.push_back(a.locus);
    }
    Ideal sing = jacobian_singular_locus(sp, ci.image);
    if (!sp.is_empty(sing)) candidates.push_back(sing);
    for (const auto& z : candidates) {
      auto zdim = sp.dimension_of(z + ci.image);
      if (!zdim) continue;
      int fiber = -1;
      for (std::size_t p = 0; p < s.center.size(); ++p) {
        if (s.center[p].is_trivial()) continue;
        Ideal over = s.center[p] + t.pullback(z, n, p);
        if (auto dd = dimension(over)) fiber = std::max(fiber, *dd - *zdim);
      }
      if (fiber >= g + 1) out.push_back({d - m + (fiber - g) + 1, z + ci.image, Rule::BC1, s.spec.name + " (fiber jump)"});
    }
  }
  return out;
}

std::vector<StrataPiece> reducible_fiber_loci(const Tower& t, Rule rule, const std::vector<Annotation>& ann) {
  const Space& sp = t.space();
  int d = sp.dimension();
  std::vector<StrataPiece> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const BlowupStep& s = t.steps()[n];
    CenterImage ci = center_image(t, n);
    if (ci.image_dim < 0) continue;
    int m = ci.image_dim;
    if (rule == Rule::BC2 && ci.center_dim > m) {
      // Positive-dimensional fibers of the center itself: only annotated loci can be placed.
      if (!annotated(ann, s.spec.name)) {
        throw Error(ErrorKind::AnnotationRequired,
                    "center '" + s.spec.name + "' has positive-dimensional fibers over its image; annotate its non-integral fiber locus");
      }
    }
    for (const auto& v : exceptional_split_loci(t, n, ann)) {
      auto vdim = sp.dimension_of(v);
      if (!vdim || *vdim >= m) continue;
      int codim = rule == Rule::BC2 ? d - m + 1 : d - *vdim;
      out.push_back({codim, v, rule, s.spec.name});
    }
  }
  return out;
}

std::vector<StrataPiece> image_singularity_loci(const Tower& t) {
  const Space& sp = t.space();
  int d = sp.dimension();
  std::vector<StrataPiece> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    CenterImage ci = center_image(t, n);
    if (ci.image_dim < 0) continue;
    Ideal sing = jacobian_singular_locus(sp, ci.image);
    if (sp.is_empty(sing)) continue;
    out.push_back({d - ci.image_dim + 1, sing, Rule::BC3, t.steps()[n].spec.name});
  }
  return out;
}

std::vector<StrataPiece> curve_rule_loci(const Tower& t, const std::vector<Annotation>& ann) {
  const Space& sp = t.space();
  int d = sp.dimension();
  Ideal sing = sp.singular_locus();
  auto sdim = sp.dimension_of(sing);
  if (!sdim || *sdim != 1) {
    throw Error(ErrorKind::Precondition, "the curve rule needs a one-dimensional singular locus, got dimension " +
                                             (sdim ? std::to_string(*sdim) : std::string("-inf")));
  }
  std::vector<StrataPiece> out;
  out.push_back({d - 1, sing, Rule::Curve, "singular locus"});
  std::vector<std::pair<Ideal, std::string>> curves;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const std::string& name = t.steps()[n].spec.name;
    CenterImage ci = center_image(t, n);
    if (ci.image_dim == 0) out.push_back({d, ci.image, Rule::Curve, name + " (contracted)"});
    if (ci.image_dim != 1) continue;
    Ideal js = jacobian_singular_locus(sp, ci.image);
    if (!sp.is_empty(js)) out.push_back({d, js, Rule::Curve, name + " (singular points)"});
    for (const auto& v : exceptional_split_loci(t, n, ann)) {
      auto vdim = sp.dimension_of(v);
      if (vdim && *vdim == 0) out.push_back({d, v, Rule::Curve, name + " (singular fibers)"});
    }
    bool dup = std::any_of(curves.begin(), curves.end(), [&](const auto& c) { return c.first == ci.image; });
    if (!dup) curves.push_back({ci.image, name});
  }
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = a + 1; b < curves.size(); ++b) {
      Ideal meet = curves[a].first + curves[b].first;
      if (!sp.is_empty(meet)) {
        out.push_back({d, meet, Rule::Curve, curves[a].second + " meets " + curves[b].second});
      }
    }
  }
  return out;
}

Stratification assemble_stratification(const Tower& t, const StrataConfig& cfg) {
  const Space& sp = t.space();
  int d = sp.dimension();
  Stratification s(sp);
  Ideal sing = sp.singular_locus();
  if (!sp.is_empty(sing) && d >= 2) s.add({2, sing, Rule::Seed, "singular locus"});

  std::set<Rule> rules = cfg.rules;
  if (rules.count(Rule::Fourfold)) {
    if (d != 4) throw Error(ErrorKind::Precondition, "the fourfold recipe needs dimension 4, got " + std::to_string(d));
    rules.insert({Rule::BC1, Rule::BC2, Rule::BC3, Rule::AC});
  }
  if (!cfg.manual.empty()) rules.insert(Rule::Manual);
  s.add_rules(rules);
  auto add_all = [&](std::vector<StrataPiece> ps) {
    for (auto& p : ps) s.add(std::move(p));
  };
  if (rules.count(Rule::BC1)) add_all(fiber_dimension_strata(t, cfg.annotations));
  if (rules.count(Rule::BC2)) add_all(reducible_fiber_loci(t, Rule::BC2, cfg.annotations));
  if (rules.count(Rule::BC3)) add_all(image_singularity_loci(t));
  if (rules.count(Rule::AC)) add_all(reducible_fiber_loci(t, Rule::AC, cfg.annotations));
  if (rules.count(Rule::Curve)) add_all(curve_rule_loci(t, cfg.annotations));
  for (const auto& [codim, ideal] : cfg.manual) {
    if (codim < 1 || codim > d) {
      throw Error(ErrorKind::Validation, "manual stratum codimension " + std::to_string(codim) + " outside [1, " +
                                             std::to_string(d) + "]");
    }
    s.add({codim, ideal, Rule::Manual, "manual"});
  }
  s.verify();
  return s;
}

Stratification refine_stratifications(const Stratification& a, const Stratification& b) {
  if (!a.space().ring().same_variables(b.space().ring()) || a.space().ideal() != b.space().ideal()) {
    throw Error(ErrorKind::Precondition, "stratifications live on different spaces");
  }
  Stratification out = a;
  for (const auto& p : b.pieces()) out.add(p);
  for (const auto& w : b.warnings()) out.warn(w);
  out.add_rules(b.rules());
  out.verify();
  return out;
}

}  // namespace resint
