#include "resint/pairing.hpp"

#include <algorithm>
#include <map>

namespace resint {

long ZeroCycle::degree() const {
  long d = 0;
  for (const auto& p : points) d += static_cast<long>(p.mult) * p.point.residue_degree;
  return d;
}

bool ZeroCycle::same_points(const ZeroCycle& o) const {
  if (points.size() != o.points.size()) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].key != o.points[i].key || points[i].mult != o.points[i].mult) return false;
  }
  return true;
}

std::string ZeroCycle::to_string() const {
  if (points.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) s += " + ";
    if (points[i].mult != 1) s += std::to_string(points[i].mult) + "*";
    s += points[i].label;
  }
  return s;
}

TopCycle transform_cycle(const Tower& t, const Cycle& a) {
  TopCycle out;
  out.name = a.name;
  for (const auto& comp : a.components) {
    TopCycle::Component c;
    c.charts = t.proper_transform(comp.ideal);
    c.dim = comp.dim;
    c.mult = comp.mult;
    out.components.push_back(std::move(c));
  }
  return out;
}

namespace {

// Complete intersection check: drop redundant generators greedily and compare with the codimension.
bool complete_intersection(const Ideal& i, int dim) {
  std::vector<Polynomial> gens = i.generators();
  for (std::size_t k = gens.size(); k-- > 0;) {
    std::vector<Polynomial> rest = gens;
    rest.erase(rest.begin() + static_cast<long>(k));
    if (Ideal(i.ring(), rest).contains(gens[k])) gens = std::move(rest);
  }
  return static_cast<int>(gens.size()) == static_cast<int>(i.ring().size()) - dim;
}

void add_point(std::vector<ZeroCyclePoint>& pts, ZeroCyclePoint p) {
  for (auto& q : pts) {
    if (q.key == p.key) {
      q.mult += p.mult;
      return;
    }
  }
  pts.push_back(std::move(p));
}

void finish(ZeroCycle& z) {
  z.points.erase(std::remove_if(z.points.begin(), z.points.end(), [](const ZeroCyclePoint& p) { return p.mult == 0; }),
                 z.points.end());
  std::sort(z.points.begin(), z.points.end(), [](const ZeroCyclePoint& a, const ZeroCyclePoint& b) { return a.key < b.key; });
}

}  // namespace

Intersection intersect_zero_dim(const Tower& t, const TopCycle& a, const TopCycle& b) {
  const auto& top = t.top();
  int d = t.space().dimension();
  if (a.dimension() + b.dimension() != d) {
    throw Error(ErrorKind::ImproperIntersection, "expected intersection dimension " +
                                                     std::to_string(a.dimension() + b.dimension() - d) + ", not 0");
  }
  for (const auto& c : top) {
    if (!is_smooth(c.chart)) throw Error(ErrorKind::NotSmooth, "chart " + c.label + " of the resolution is singular");
  }
  Intersection out;
  for (std::size_t k = 0; k < top.size(); ++k) {
    const TowerChart& c = top[k];
    Ideal total = Ideal::unit(c.ring());
    for (const auto& ca : a.components) {
      Ideal ia = ca.charts[k].plus(c.relations().generators());
      if (ia.is_trivial()) continue;
      for (const auto& cb : b.components) {
        Ideal ib = cb.charts[k].plus(c.relations().generators());
        if (ib.is_trivial()) continue;
        Ideal j = ia + ib;
        if (j.is_trivial()) continue;
        int dim = krull_dimension(j);
        if (dim > 0) {
          throw Error(ErrorKind::ImproperIntersection, "incidence of dimension " + std::to_string(dim) + " in chart " +
                                                           c.label + ": " + j.to_string());
        }
        if (!complete_intersection(ia, ca.dim) && !complete_intersection(ib, cb.dim)) {
          throw Error(ErrorKind::IntersectionScope,
                      "neither factor is a complete intersection in chart " + c.label + "; multiplicities would need Tor terms");
        }
        total = intersect(total, j);
        for (const auto& pc : zero_dim_decompose(j, c.label)) {
          if (!locus_subset(pc.point.prime, c.ownership)) continue;
          ZeroCyclePoint zp;
          zp.key = pc.point.key();
          zp.label = c.label + ":" + pc.point.to_string();
          zp.chart = k;
          zp.point = pc.point;
          zp.mult = pc.multiplicity * ca.mult * cb.mult;
          add_point(out.cycle.points, std::move(zp));
        }
      }
    }
    if (!total.is_trivial()) out.charts.push_back({c.label, total.reduced()});
  }
  finish(out.cycle);
  return out;
}

ZeroCycle pushforward(const Tower& t, const ZeroCycle& z) {
  const Space& sp = t.space();
  std::size_t level = t.levels().size() - 1;
  ZeroCycle out;
  for (const auto& p : z.points) {
    auto bd = t.blowdown(p.point, level, p.chart);
    if (p.point.residue_degree % bd.residue_degree != 0) {
      throw Error(ErrorKind::Precondition, "residue degree of the image does not divide that of " + p.label);
    }
    ZeroCyclePoint q;
    q.key = bd.key;
    q.label = sp.point_label(bd.base_chart, bd.prime);
    q.chart = bd.base_chart;
    q.point.chart = sp.charts()[bd.base_chart].label;
    q.point.ring = bd.prime.ring();
    q.point.prime = bd.prime;
    q.point.residue_degree = bd.residue_degree;
    q.mult = p.mult * (p.point.residue_degree / bd.residue_degree);
    add_point(out.points, std::move(q));
  }
  finish(out);
  return out;
}

std::vector<std::string> theorem_hypotheses(const Stratification& s, int r, int q_dim, const Perversity& p,
                                            const Perversity& q) {
  std::vector<std::string> out;
  int d = s.dimension();
  if (p.size() != d || q.size() != d) return out;
  if (!p.is_standard() || !q.is_standard() || !(p + q == Perversity::top(d))) return out;
  const auto& rules = s.rules();
  auto has = [&](Rule x) { return rules.count(x) > 0; };
  if (has(Rule::BC1) && has(Rule::AC) && (r == d - 1 || q_dim == d - 1)) out.push_back("divisor pairing");
  auto sing = s.space().dimension_of(s.space().singular_locus());
  if (has(Rule::Curve) && sing && *sing == 1 && r + q_dim == d) out.push_back("one dim sing");
  if (d == 4 && has(Rule::BC1) && has(Rule::BC2) && has(Rule::BC3) && has(Rule::AC) && r == 2 && q_dim == 2) {
    out.push_back("4fold");
  }
  return out;
}

PairingReport pair(const Tower& t, const Stratification& s, const Cycle& a, const Cycle& b, const Perversity& p,
                   const Perversity& q, const PairingOptions& opt) {
  PairingReport rep;
  for (const Perversity* x : {&p, &q}) {
    if (!x->is_standard() && !opt.allow_nonstandard) {
      throw Error(ErrorKind::NonstandardPerversity,
                  "perversity " + x->to_string() + " is not standard (p1 = 0 with unit steps)");
    }
  }
  rep.first = perversity_check(a, s, p);
  rep.second = perversity_check(b, s, q);
  for (const Perversity* x : {&p, &q}) {
    if (!x->is_standard()) rep.warnings.push_back("non-standard perversity " + x->to_string() + " used as an incidence bound");
  }
  int d = s.dimension();
  rep.complementary = p + q == Perversity::top(d);
  if (!rep.complementary) {
    std::string msg = "perversities " + p.to_string() + " + " + q.to_string() + " differ from the top perversity " +
                      Perversity::top(d).to_string();
    if (opt.strict_complementarity) throw Error(ErrorKind::Complementarity, msg);
    rep.warnings.push_back(msg);
  }
  rep.hypotheses = theorem_hypotheses(s, a.dimension(), b.dimension(), p, q);
  rep.upstairs = intersect_zero_dim(t, transform_cycle(t, a), transform_cycle(t, b));
  rep.pushed = pushforward(t, rep.upstairs.cycle);
  rep.degree = rep.pushed.degree();
  if (rep.degree != rep.upstairs.cycle.degree()) {
    throw Error(ErrorKind::Precondition, "pushforward changed the degree");
  }
  return rep;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "CONSISTENT";
    case Verdict::Inconsistent: return "INCONSISTENT";
    case Verdict::FamilyRejected: return "FAMILY_REJECTED";
    case Verdict::CycleRejected: return "CYCLE_REJECTED";
  }
  return "?";
}

AuditReport audit_well_definedness(const Tower& t, const Stratification& s, const CycleFamily& f, const Cycle& b,
                                   const Perversity& p, const Perversity& q, FamilyMode mode,
                                   const PairingOptions& opt) {
  const Space& sp = t.space();
  AuditReport rep;
  rep.family = family_perversity_check(sp, f, s, p, mode);
  rep.second = perversity_check(b, s, q);
  rep.values = {f.marked.at(0), f.marked.at(1)};
  bool rejected = !rep.family.pass || !rep.second.pass;
  for (const auto& v : rep.values) {
    try {
      rep.pairs.push_back(pair(t, s, family_fiber(sp, f, v), b, p, q, opt));
    } catch (const Error& e) {
      if (!rejected) throw;
      rep.pairs.push_back(std::nullopt);
      rep.notes.push_back("pairing at " + f.parameter + "=" + scalar_to_string(v) + " not computed: " + e.what());
    }
    try {
      rep.errors.push_back(error_terms(t, f, v));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::FactorizationScope && e.kind() != ErrorKind::ContainedInCenter) throw;
      rep.notes.push_back("error term at " + f.parameter + "=" + scalar_to_string(v) + " not computed: " + e.what());
    }
  }
  rep.hypotheses = theorem_hypotheses(s, f.dim, b.dimension(), p, q);

  if (!rep.family.pass) rep.verdict = Verdict::FamilyRejected;
  else if (!rep.second.pass) rep.verdict = Verdict::CycleRejected;
  else if (rep.pairs[0]->degree != rep.pairs[1]->degree) rep.verdict = Verdict::Inconsistent;
  else rep.verdict = Verdict::Consistent;
  if (rep.pairs[0] && rep.pairs[1]) rep.same_points = rep.pairs[0]->pushed.same_points(rep.pairs[1]->pushed);
  return rep;
}

TowerComparison compare_towers(const Tower& t1, const Tower& t2, const Stratification& s, const Cycle& a,
                               const Cycle& b, const Perversity& p, const Perversity& q, const PairingOptions& opt) {
  if (t1.size() > t2.size()) throw Error(ErrorKind::Precondition, "the second tower must extend the first");
  for (std::size_t k = 0; k < t1.size(); ++k) {
    const auto& s1 = t1.steps()[k].spec;
    const auto& s2 = t2.steps()[k].spec;
    if (s1.mode != s2.mode || !s1.ideal.ring().same_variables(s2.ideal.ring()) || s1.ideal != s2.ideal) {
      throw Error(ErrorKind::Precondition, "step " + std::to_string(k + 1) + " differs between the towers");
    }
  }
  TowerComparison out;
  out.first = pair(t1, s, a, b, p, q, opt);
  out.second = pair(t2, s, a, b, p, q, opt);
  out.equal_degree = out.first.degree == out.second.degree;
  out.equal_points = out.first.pushed.same_points(out.second.pushed);
  return out;
}

SmoothCaseReport smooth_case_check(const Tower& t, const Cycle& a, const Cycle& b) {
  const Space& sp = t.space();
  if (t.size() != 1) throw Error(ErrorKind::Precondition, "the smooth case compares a single blowup");
  if (!sp.is_empty(sp.singular_locus())) throw Error(ErrorKind::Precondition, "the smooth case needs a smooth variety");
  const Ideal& center = t.steps()[0].spec.ideal;
  int d = sp.dimension();
  SmoothCaseReport rep;
  rep.codim = d - sp.dimension_of(center).value();
  auto excess = [&](const Cycle& c) {
    int worst = 0;
    for (const auto& comp : c.components) {
      auto dim = sp.dimension_of(comp.ideal + center);
      if (dim) worst = std::max(worst, *dim - comp.dim + rep.codim);
    }
    return worst;
  };
  rep.p = excess(a);
  rep.q = excess(b);
  rep.hypothesis = rep.p + rep.q <= rep.codim - 1;
  Tower id = Tower::build(sp, {});
  rep.direct_degree = pushforward(id, intersect_zero_dim(id, transform_cycle(id, a), transform_cycle(id, b)).cycle).degree();
  rep.pushed_degree = pushforward(t, intersect_zero_dim(t, transform_cycle(t, a), transform_cycle(t, b)).cycle).degree();
  return rep;
}

}  // namespace resint
