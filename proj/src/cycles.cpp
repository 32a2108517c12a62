#include "resint/cycles.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace resint {

Perversity Perversity::top(int d) {
  Perversity p;
  for (int i = 1; i <= d; ++i) p.p.push_back(i - 1);
  return p;
}

Perversity Perversity::parse(const std::string& s) {
  Perversity out;
  std::string body;
  for (char c : s) {
    if (c == '(' || c == ')' || c == ' ') continue;
    body += c;
  }
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.p.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad perversity entry '" + item + "' in '" + s + "'");
    }
  }
  if (out.p.empty()) throw Error(ErrorKind::Parse, "empty perversity '" + s + "'");
  return out;
}

bool Perversity::is_standard() const {
  if (p.empty() || p[0] != 0) return false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    int step = p[i] - p[i - 1];
    if (step != 0 && step != 1) return false;
  }
  return true;
}

bool Perversity::operator<=(const Perversity& o) const {
  if (p.size() != o.p.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > o.p[i]) return false;
  }
  return true;
}

std::string Perversity::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Perversity operator+(const Perversity& a, const Perversity& b) {
  if (a.p.size() != b.p.size()) throw Error(ErrorKind::Precondition, "perversities of different lengths");
  Perversity out;
  for (std::size_t i = 0; i < a.p.size(); ++i) out.p.push_back(a.p[i] + b.p[i]);
  return out;
}

Cycle Cycle::scaled(int k) const {
  Cycle c = *this;
  if (k == 0) c.components.clear();
  for (auto& comp : c.components) comp.mult *= k;
  return c;
}

std::string Cycle::to_string() const {
  if (components.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (i) s += " + ";
    if (c.mult != 1) s += std::to_string(c.mult) + "*";
    s += "[" + c.ideal.to_string() + "]";
  }
  return s;
}

Cycle make_cycle(const Space& s, std::string name, const Ideal& ideal, int mult, int dim) {
  auto d = s.dimension_of(ideal);
  if (!d) throw Error(ErrorKind::EmptyVariety, "cycle '" + name + "' does not meet the variety");
  if (dim >= 0 && *d != dim) {
    throw Error(ErrorKind::Dimension, "cycle '" + name + "' has dimension " + std::to_string(*d) + ", declared " +
                                          std::to_string(dim));
  }
  if (mult == 0) throw Error(ErrorKind::Validation, "cycle '" + name + "' has multiplicity 0");
  Cycle c;
  c.name = std::move(name);
  c.components.push_back({ideal, *d, mult});
  return c;
}

void validate_cycle(const Space& s, const Cycle& c) {
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    const auto& comp = c.components[i];
    auto d = s.dimension_of(comp.ideal);
    if (!d || *d != comp.dim) {
      throw Error(ErrorKind::Dimension, "component " + comp.ideal.to_string() + " of '" + c.name +
                                            "' does not have dimension " + std::to_string(comp.dim));
    }
    if (comp.dim != c.components.front().dim) {
      throw Error(ErrorKind::Dimension, "cycle '" + c.name + "' is not pure-dimensional");
    }
    if (comp.mult == 0) throw Error(ErrorKind::Validation, "cycle '" + c.name + "' has a component of multiplicity 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (s.subset(comp.ideal, c.components[j].ideal) && s.subset(c.components[j].ideal, comp.ideal)) {
        throw Error(ErrorKind::Validation, "cycle '" + c.name + "' repeats the component " + comp.ideal.to_string());
      }
    }
  }
}

Cycle add_cycles(const Space& s, const Cycle& a, const Cycle& b) {
  Cycle out = a;
  for (const auto& comp : b.components) {
    bool merged = false;
    for (auto& c : out.components) {
      if (s.subset(c.ideal, comp.ideal) && s.subset(comp.ideal, c.ideal)) {
        c.mult += comp.mult;
        merged = true;
        break;
      }
    }
    if (!merged) out.components.push_back(comp);
  }
  out.components.erase(std::remove_if(out.components.begin(), out.components.end(),
                                      [](const CycleComponent& c) { return c.mult == 0; }),
                       out.components.end());
  return out;
}

namespace {

bool same_set(const Space& s, const Ideal& a, const Ideal& b) { return s.subset(a, b) && s.subset(b, a); }

Factorization factor_in_scope(const Polynomial& g) {
  try {
    return factor(g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FactorizationScope) throw;
    throw Error(ErrorKind::FactorizationScope, "decomposition scope exceeded: " + std::string(e.what()));
  }
}

std::vector<Ideal> split_support(const Space& s, const Ideal& j, int r) {
  Ideal n = s.normalize(j);
  auto d = s.dimension_of(n);
  if (!d || *d < r) return {};
  Ideal red = n.reduced();
  for (const auto& g : red.generators()) {
    if (g.total_degree() <= 1) continue;
    Factorization fac = factor_in_scope(g);
    if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1) continue;
    std::vector<Ideal> out;
    for (std::size_t k = 0; k < fac.factors.size(); ++k) {
      Ideal c = j.plus({change_ring(fac.factors[k].poly, j.ring())});
      Polynomial others = Polynomial::constant(j.ring(), 1);
      for (std::size_t m = 0; m < fac.factors.size(); ++m) {
        if (m != k) others *= change_ring(fac.factors[m].poly, j.ring());
      }
      if (!others.is_constant()) c = saturate(c, others).ideal;
      for (auto& part : split_support(s, c, r)) {
        bool dup = std::any_of(out.begin(), out.end(), [&](const Ideal& o) { return same_set(s, o, part); });
        if (!dup) out.push_back(std::move(part));
      }
    }
    return out;
  }
  if (*d > r) throw Error(ErrorKind::Dimension, "component of dimension " + std::to_string(*d) + " in a " +
                                                    std::to_string(r) + "-cycle");
  return {n};
}

int generic_multiplicity(const Space& s, const Ideal& j, const Ideal& prime, int r) {
  for (std::size_t k = 0; k < s.charts().size(); ++k) {
    Ideal pc = s.to_chart(prime, k);
    auto pd = dimension(pc);
    if (!pd || *pd != r) continue;
    Ideal jc = s.to_chart(j, k);
    const Ring& ring = pc.ring();
    std::vector<std::size_t> u = maximal_independent_set(pc);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Polynomial> spec;
      for (std::size_t i = 0; i < u.size(); ++i) {
        Scalar v = 2 + 3 * static_cast<int>(i) + 5 * trial + trial * trial;
        spec.push_back(Polynomial::variable(ring, u[i]) - Polynomial::constant(ring, v));
      }
      Ideal ps = pc.plus(spec), js = jc.plus(spec);
      if (ps.is_trivial() || !is_zero_dimensional(ps) || !is_zero_dimensional(js)) continue;
      auto pp = zero_dim_decompose(ps);
      auto jp = zero_dim_decompose(js);
      int m = -1;
      bool ok = !pp.empty();
      for (const auto& p : pp) {
        if (p.multiplicity != 1) ok = false;
        auto it = std::find_if(jp.begin(), jp.end(), [&](const PointComponent& q) { return q.point.key() == p.point.key(); });
        if (it == jp.end()) {
          ok = false;
          break;
        }
        if (m < 0) m = it->multiplicity;
        else if (m != it->multiplicity) ok = false;
      }
      if (ok && m > 0) return m;
    }
  }
  throw Error(ErrorKind::FactorizationScope, "could not determine the multiplicity along " + prime.to_string());
}

}  // namespace

std::vector<CycleComponent> decompose_cycle(const Space& s, const Ideal& ideal, int r) {
  auto d = s.dimension_of(ideal);
  if (!d) return {};
  if (*d != r) {
    throw Error(ErrorKind::Dimension, "expected dimension " + std::to_string(r) + ", got " + std::to_string(*d) +
                                          " for " + ideal.to_string());
  }
  std::vector<CycleComponent> out;
  auto parts = split_support(s, ideal, r);
  for (auto& p : parts) {
    int m = generic_multiplicity(s, ideal, p, r);
    out.push_back({p, r, m});
  }
  std::sort(out.begin(), out.end(),
            [](const CycleComponent& a, const CycleComponent& b) { return a.ideal.canonical() < b.ideal.canonical(); });
  return out;
}

PerversityReport perversity_check(const Cycle& a, const Stratification& s, const Perversity& p) {
  int d = s.dimension();
  if (p.size() != d) {
    throw Error(ErrorKind::Precondition, "perversity " + p.to_string() + " has length " + std::to_string(p.size()) +
                                             ", the variety has dimension " + std::to_string(d));
  }
  PerversityReport rep;
  rep.r = a.dimension();
  rep.perversity = p;
  rep.nonstandard = !p.is_standard();
  for (int i = 1; i <= d; ++i) {
    LevelCheck lc;
    lc.level = i;
    lc.bound = rep.r - i + p.at(i);
    for (const auto& comp : a.components) {
      auto dim = s.incidence_dimension(comp.ideal, i);
      if (dim && (!lc.dim || *dim > *lc.dim)) lc.dim = dim;
    }
    lc.pass = !lc.dim || *lc.dim <= lc.bound;
    rep.pass = rep.pass && lc.pass;
    rep.levels.push_back(lc);
  }
  return rep;
}

std::optional<Perversity> minimal_perversity(const Cycle& a, const Stratification& s) {
  int d = s.dimension();
  PerversityReport rep = perversity_check(a, s, Perversity::zero(d));
  std::vector<int> need(static_cast<std::size_t>(d), 0);
  for (const auto& lc : rep.levels) {
    if (lc.dim) need[static_cast<std::size_t>(lc.level - 1)] = std::max(0, *lc.dim - (rep.r - lc.level));
  }
  std::vector<int> lower(need);
  for (int i = d - 2; i >= 0; --i) lower[i] = std::max(lower[i], lower[i + 1] - 1);
  if (d > 0 && lower[0] > 0) return std::nullopt;
  Perversity p = Perversity::zero(d);
  for (int i = 1; i < d; ++i) p.p[i] = std::max(p.p[i - 1], lower[i]);
  return p;
}

CycleFamily make_family(const Space& s, std::string name, std::string parameter, const std::vector<std::string>& gens,
                        std::vector<Scalar> marked, int dim) {
  if (s.ring().index_of(parameter)) {
    throw Error(ErrorKind::Validation, "family parameter '" + parameter + "' clashes with a variable of the space");
  }
  CycleFamily f;
  f.name = std::move(name);
  f.parameter = std::move(parameter);
  f.total = Ideal::parse(s.ring().extended({f.parameter}), gens);
  f.marked = std::move(marked);
  f.dim = dim;
  if (f.total.is_trivial()) throw Error(ErrorKind::EmptyVariety, "family '" + f.name + "' is empty");
  if (f.marked.size() < 2) throw Error(ErrorKind::Validation, "family '" + f.name + "' needs two marked values");
  for (const auto& v : f.marked) family_fiber(s, f, v);
  return f;
}

namespace {

Ideal fiber_ideal(const Space& s, const CycleFamily& f, const Scalar& value) {
  std::size_t par = f.total.ring().size() - 1;
  std::vector<Polynomial> gens;
  for (const auto& g : f.total.generators()) {
    Polynomial h = substitute_var(g, par, Polynomial::constant(f.total.ring(), value));
    if (!h.is_zero()) gens.push_back(change_ring(h, s.ring()));
  }
  return Ideal(s.ring(), gens);
}

// An affine chart of the space with the family parameter appended.
struct ParamChart {
  Ring ring;
  std::vector<Polynomial> images;  // of the family ring variables
  Ideal relations;
  std::size_t param = 0;

  Ideal lift(const Ideal& family_ideal) const {
    return substitute(family_ideal, images, ring).plus(relations.generators());
  }
};

std::vector<ParamChart> param_charts(const Space& s, const std::string& parameter) {
  std::vector<ParamChart> out;
  for (const auto& c : s.charts()) {
    ParamChart pc;
    pc.ring = c.ring.extended({c.ring.fresh_name(parameter)});
    pc.param = pc.ring.size() - 1;
    if (s.is_projective()) {
      std::size_t pivot = s.ring().require(c.label), pos = 0;
      for (std::size_t j = 0; j < s.ring().size(); ++j) {
        pc.images.push_back(j == pivot ? Polynomial::constant(pc.ring, 1) : Polynomial::variable(pc.ring, pos++));
      }
    } else {
      for (std::size_t j = 0; j < s.ring().size(); ++j) pc.images.push_back(Polynomial::variable(pc.ring, j));
    }
    pc.images.push_back(Polynomial::variable(pc.ring, pc.param));
    pc.relations = Ideal(pc.ring, {});
    for (const auto& g : c.relations.generators()) pc.relations = pc.relations.plus({change_ring(g, pc.ring)});
    out.push_back(std::move(pc));
  }
  return out;
}

// Moves a polynomial in the parameter alone into a chart ring.
Polynomial param_poly_to(const Polynomial& q, const ParamChart& pc) {
  return substitute(q, {Polynomial::variable(pc.ring, pc.param)}, pc.ring);
}

// Irreducible parameter polynomials over which the fibers of `ic` may differ from the generic one.
void special_factors(const Ideal& ic, const ParamChart& pc, const Ring& pring, std::map<std::string, Polynomial>& out) {
  auto record = [&](const Polynomial& f) {
    std::vector<Polynomial> img(pc.ring.size(), Polynomial::constant(pring, 0));
    img[pc.param] = Polynomial::variable(pring, 0);
    Polynomial q = substitute(f, img, pring);
    if (q.is_constant()) return;
    for (const auto& fa : factor(q).factors) out.emplace(fa.poly.to_string(), fa.poly);
  };
  std::size_t n = pc.ring.size() - 1;
  std::vector<std::size_t> xs;
  for (std::size_t v = 0; v < n; ++v) xs.push_back(v);
  GroebnerBasis b = ic.basis(MonomialOrder::elimination(n));
  for (const auto& g : b.elements()) {
    Exponents lead(n);
    for (std::size_t v = 0; v < n; ++v) lead[v] = g.lm()[v];
    auto coeffs = coefficients_in(g, xs);
    auto it = coeffs.find(lead);
    if (it != coeffs.end()) record(it->second);
  }
}

std::optional<int> generic_fiber_dim(const Ideal& ic, const ParamChart& pc, const std::vector<Polynomial>& special) {
  Ideal dom = ic;
  for (const auto& q : special) {
    if (dom.is_trivial()) break;
    dom = saturate(dom, param_poly_to(q, pc)).ideal;
  }
  if (dom.is_trivial()) return std::nullopt;
  Ideal base = eliminate(dom, [&] {
    std::vector<std::size_t> v;
    for (std::size_t k = 0; k < pc.param; ++k) v.push_back(k);
    return v;
  }());
  if (!base.reduced().generators().empty()) return std::nullopt;
  return krull_dimension(dom) - 1;
}

}  // namespace

Cycle family_fiber(const Space& s, const CycleFamily& f, const Scalar& value) {
  Ideal j = fiber_ideal(s, f, value);
  auto d = s.dimension_of(j);
  std::string where = "fiber of '" + f.name + "' at " + f.parameter + "=" + scalar_to_string(value);
  if (!d) throw Error(ErrorKind::Dimension, where + " is empty");
  if (*d != f.dim) {
    throw Error(ErrorKind::Dimension, where + " has dimension " + std::to_string(*d) + ", expected " +
                                          std::to_string(f.dim));
  }
  Cycle c;
  c.name = f.name + "@" + scalar_to_string(value);
  c.components = decompose_cycle(s, j, f.dim);
  return c;
}

FamilyReport family_perversity_check(const Space& sp, const CycleFamily& f, const Stratification& s,
                                     const Perversity& p, FamilyMode mode) {
  FamilyReport rep;
  rep.mode = mode;
  for (const auto& v : f.marked) {
    auto pr = perversity_check(family_fiber(sp, f, v), s, p);
    rep.pass = rep.pass && pr.pass;
    rep.marked.emplace_back(v, std::move(pr));
  }
  if (mode == FamilyMode::Weak) return rep;

  int d = s.dimension();
  if (p.size() != d) throw Error(ErrorKind::Precondition, "perversity length does not match the dimension");
  auto charts = param_charts(sp, f.parameter);
  Ring pring({f.parameter});
  const Ring& fring = f.total.ring();

  std::vector<std::vector<Ideal>> incid(static_cast<std::size_t>(d) + 1);
  std::map<std::string, Polynomial> special;
  for (int i = 1; i <= d; ++i) {
    Ideal level = s.level(i);
    Ideal fam = sp.is_empty(level) ? Ideal::unit(fring) : f.total + change_ring(level, fring);
    for (const auto& pc : charts) {
      Ideal ic = fam.is_trivial() ? Ideal::unit(pc.ring) : pc.lift(fam);
      if (!ic.is_trivial()) special_factors(ic, pc, pring, special);
      incid[static_cast<std::size_t>(i)].push_back(ic);
    }
  }
  std::vector<Polynomial> qs;
  for (const auto& [k, q] : special) qs.push_back(q);

  for (int i = 1; i <= d; ++i) {
    LevelCheck lc;
    lc.level = i;
    lc.bound = f.dim - i + p.at(i);
    for (std::size_t c = 0; c < charts.size(); ++c) {
      const Ideal& ic = incid[static_cast<std::size_t>(i)][c];
      if (ic.is_trivial()) continue;
      auto g = generic_fiber_dim(ic, charts[c], qs);
      if (g && (!lc.dim || *g > *lc.dim)) lc.dim = g;
    }
    lc.pass = !lc.dim || *lc.dim <= lc.bound;
    rep.pass = rep.pass && lc.pass;
    rep.generic.push_back(lc);
  }
  for (const auto& q : qs) {
    SpecialFiber sf;
    sf.locus = q;
    for (int i = 1; i <= d; ++i) {
      LevelCheck lc;
      lc.level = i;
      lc.bound = f.dim - i + p.at(i);
      for (std::size_t c = 0; c < charts.size(); ++c) {
        const Ideal& ic = incid[static_cast<std::size_t>(i)][c];
        if (ic.is_trivial()) continue;
        auto dim = dimension(ic.plus({param_poly_to(q, charts[c])}));
        if (dim && (!lc.dim || *dim > *lc.dim)) lc.dim = dim;
      }
      lc.pass = !lc.dim || *lc.dim <= lc.bound;
      sf.pass = sf.pass && lc.pass;
      sf.levels.push_back(lc);
    }
    rep.pass = rep.pass && sf.pass;
    rep.special.push_back(std::move(sf));
  }
  return rep;
}

bool ErrorTerm::over_singular_locus() const {
  return std::all_of(components.begin(), components.end(), [](const ErrorComponent& c) { return c.over_singular_locus; });
}

ErrorTerm error_terms(const Tower& t, const CycleFamily& f, const Scalar& value) {
  const Space& sp = t.space();
  std::size_t top = t.levels().size() - 1;
  Cycle fiber = family_fiber(sp, f, value);
  std::vector<std::vector<Ideal>> pt;
  for (const auto& comp : fiber.components) pt.push_back(t.proper_transform(comp.ideal));
  auto charts = param_charts(sp, f.parameter);
  Ideal sing = sp.singular_locus();

  ErrorTerm out;
  out.value = value;
  for (std::size_t k = 0; k < t.top().size(); ++k) {
    const TowerChart& c = t.top()[k];
    const ParamChart& pc = charts[c.base_chart];
    Ring tr = c.ring().extended({c.ring().fresh_name(f.parameter)});
    std::size_t lam = tr.size() - 1;
    std::vector<Polynomial> imgs;
    for (std::size_t j = 0; j < pc.param; ++j) imgs.push_back(change_ring(c.to_base[j], tr));
    imgs.push_back(Polynomial::variable(tr, lam));
    Ideal fam = substitute(pc.lift(f.total), imgs, tr);
    for (const auto& g : c.relations().generators()) fam = fam.plus({change_ring(g, tr)});

    // Exceptional equations of every ancestor, carried down to this chart.
    std::vector<const TowerChart*> chain(top + 1);
    std::size_t idx = k;
    for (std::size_t lv = top; lv > 0; --lv) {
      chain[lv] = &t.levels()[lv][idx];
      idx = static_cast<std::size_t>(chain[lv]->parent);
    }
    for (std::size_t lv = 1; lv <= top; ++lv) {
      if (!chain[lv]->exceptional) continue;
      Polynomial e = *chain[lv]->exceptional;
      for (std::size_t m = lv + 1; m <= top; ++m) e = substitute(e, chain[m]->to_parent, chain[m]->ring());
      fam = saturate(fam, change_ring(e, tr)).ideal;
    }
    if (fam.is_trivial()) continue;

    std::vector<Polynomial> fg;
    for (const auto& g : fam.generators()) {
      Polynomial h = substitute_var(g, lam, Polynomial::constant(tr, value));
      if (!h.is_zero()) fg.push_back(change_ring(h, c.ring()));
    }
    Ideal f0(c.ring(), fg);
    if (f0.is_trivial()) continue;
    Space local = Space::affine(c.ring(), c.relations(), c.label);

    std::vector<ErrorComponent> found;
    auto owned = [&](const Ideal& comp) { return locus_subset(comp, c.ownership); };
    try {
      auto comps = decompose_cycle(local, f0, f.dim);
      std::vector<std::pair<Ideal, int>> diff;
      for (const auto& cc : comps) diff.emplace_back(cc.ideal, cc.mult);
      for (std::size_t j = 0; j < pt.size(); ++j) {
        Ideal pj = local.normalize(pt[j][k]);
        if (local.is_empty(pj)) continue;
        auto it = std::find_if(diff.begin(), diff.end(), [&](const auto& e) { return same_set(local, e.first, pj); });
        if (it != diff.end()) it->second -= fiber.components[j].mult;
        else diff.emplace_back(pj, -fiber.components[j].mult);
      }
      for (const auto& [ideal, m] : diff) {
        if (m == 0 || !owned(ideal)) continue;
        found.push_back({c.label, k, ideal, f.dim, m, Ideal(), true});
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::FactorizationScope) throw;
      Ideal residual = f0;
      for (std::size_t j = 0; j < pt.size(); ++j) {
        if (!pt[j][k].is_trivial()) residual = saturate(residual, pt[j][k]).ideal;
      }
      if (!residual.is_trivial() && owned(residual)) {
        found.push_back({c.label, k, residual, *dimension(residual), 0, Ideal(), true});
        out.support_only = true;
      }
    }
    for (auto& comp : found) {
      comp.image = t.image(comp.ideal, top, k);
      comp.over_singular_locus = sp.subset(comp.image, sing);
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

}  // namespace resint
