#include <algorithm>
#include <atomic>

#include "resint/ideals.hpp"

namespace resint {

namespace {

std::atomic<std::uint64_t> g_max_reductions{EngineBudget{}.max_reductions};
std::atomic<std::size_t> g_max_basis{EngineBudget{}.max_basis};
thread_local EngineCounters t_counters;

struct Entry {
  Polynomial p;
  unsigned sugar;
};

struct Pair {
  std::size_t i, j;
  Exponents lcm;
  unsigned sugar;
};

class Buchberger {
 public:
  Buchberger(Ring r, EngineBudget budget) : ring_(std::move(r)), budget_(budget) {}

  std::vector<Polynomial> run(const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> input;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      Polynomial h = g.reordered(ring_);
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      input.push_back(h.monic());
    }
    std::sort(input.begin(), input.end(),
              [&](const Polynomial& a, const Polynomial& b) { return ring_.order().compare(a.lm(), b.lm()) < 0; });
    for (auto& g : input) {
      Polynomial h = reduce(g);
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      add(h.monic(), static_cast<unsigned>(g.total_degree()));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (better(pairs_[k], pairs_[best])) best = k;
      }
      Pair pr = std::move(pairs_[best]);
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      ++t_counters.spairs;
      Polynomial h = reduce(spoly(pr));
      if (h.is_zero()) continue;
      if (h.is_constant()) return {Polynomial::constant(ring_, 1)};
      add(h.monic(), pr.sugar);
    }
    return finish();
  }

 private:
  bool better(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ring_.order().compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }

  Polynomial spoly(const Pair& pr) const {
    const Polynomial& f = entries_[pr.i].p;
    const Polynomial& g = entries_[pr.j].p;
    Polynomial a = f.mul_term(quotient_exp(pr.lcm, f.lm()), 1);
    return a.sub_mul_term(1, quotient_exp(pr.lcm, g.lm()), g);
  }

  void tick() {
    ++t_counters.reductions;
    if (++steps_ > budget_.max_reductions) {
      throw Error(ErrorKind::BudgetExceeded,
                  "Groebner basis exceeded " + std::to_string(budget_.max_reductions) + " reduction steps");
    }
  }

  const Polynomial* find_reducer(const Exponents& m) const {
    for (std::size_t idx : active_) {
      const Polynomial& g = entries_[idx].p;
      if (divides(g.lm(), m)) return &g;
    }
    return nullptr;
  }

  Polynomial reduce(Polynomial f) {
    std::vector<Term> rem;
    while (!f.is_zero()) {
      const Polynomial* g = find_reducer(f.lm());
      if (g) {
        tick();
        f = f.sub_mul_term(f.lc() / g->lc(), quotient_exp(f.lm(), g->lm()), *g);
      } else {
        rem.push_back(f.leading());
        f = f.tail();
      }
    }
    return Polynomial::from_terms(ring_, std::move(rem));
  }

  void add(Polynomial h, unsigned sugar) {
    std::size_t hi = entries_.size();
    entries_.push_back({std::move(h), sugar});
    if (entries_.size() > budget_.max_basis) {
      throw Error(ErrorKind::BudgetExceeded, "Groebner basis exceeded " + std::to_string(budget_.max_basis) + " elements");
    }
    const Exponents& lh = entries_[hi].p.lm();

    std::vector<Pair> c, d;
    for (std::size_t g : active_) c.push_back(make_pair(g, hi));
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = coprime(lh, entries_[p.i].p.lm());
      if (!keep) {
        keep = true;
        auto dominated = [&](const Pair& q) { return divides(q.lcm, p.lcm); };
        for (std::size_t m = k + 1; m < c.size() && keep; ++m) keep = !dominated(c[m]);
        for (const auto& q : d) {
          if (!keep) break;
          keep = !dominated(q);
        }
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      const Exponents& li = entries_[p.i].p.lm();
      const Exponents& lj = entries_[p.j].p.lm();
      bool drop = divides(lh, p.lcm) && lcm(li, lh) != p.lcm && lcm(lj, lh) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : d) {
      if (!coprime(lh, entries_[p.i].p.lm())) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);

    std::vector<std::size_t> act;
    for (std::size_t g : active_) {
      if (!divides(lh, entries_[g].p.lm())) act.push_back(g);
    }
    act.push_back(hi);
    active_ = std::move(act);
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    const Entry& a = entries_[i];
    const Entry& b = entries_[j];
    Exponents l = lcm(a.p.lm(), b.p.lm());
    unsigned dl = degree_of(l);
    unsigned s = std::max(a.sugar + dl - degree_of(a.p.lm()), b.sugar + dl - degree_of(b.p.lm()));
    return {i, j, std::move(l), s};
  }

  std::vector<Polynomial> finish() {
    std::vector<Polynomial> g;
    for (std::size_t idx : active_) g.push_back(entries_[idx].p);
    std::vector<Polynomial> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
        if (a == b || !divides(g[b].lm(), g[a].lm())) continue;
        redundant = g[a].lm() != g[b].lm() || b < a;
      }
      if (!redundant) minimal.push_back(g[a]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Polynomial& a, const Polynomial& b) { return ring_.order().compare(a.lm(), b.lm()) > 0; });
    entries_.clear();
    active_.clear();
    for (auto& p : minimal) {
      active_.push_back(entries_.size());
      entries_.push_back({p, 0});
    }
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      // Reduce the tail against the other elements; the leading term cannot change.
      std::vector<std::size_t> others;
      for (std::size_t m = 0; m < minimal.size(); ++m) {
        if (m != k) others.push_back(m);
      }
      active_ = others;
      Polynomial lead = Polynomial::monomial(ring_, minimal[k].lm(), minimal[k].lc());
      Polynomial r = lead + reduce(minimal[k].tail());
      out.push_back(r.monic());
    }
    return out;
  }

  Ring ring_;
  EngineBudget budget_;
  std::uint64_t steps_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

void set_default_budget(const EngineBudget& b) {
  g_max_reductions = b.max_reductions;
  g_max_basis = b.max_basis;
}

EngineBudget default_budget() { return {g_max_reductions.load(), g_max_basis.load()}; }

EngineCounters& engine_counters() { return t_counters; }
void reset_engine_counters() { t_counters = EngineCounters{}; }

GroebnerBasis groebner_basis(const Ring& ring, const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  Ring r = ring.with_order(order);
  for (const auto& g : gens) {
    if (!g.ring().same_variables(ring)) throw Error(ErrorKind::RingMismatch, "generator lives in a different ring");
  }
  ++t_counters.groebner_calls;
  Buchberger b(r, default_budget());
  return GroebnerBasis(r, b.run(gens));
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (!f.ring().same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "normal form across rings");
  Polynomial p = f.reordered(ring_);
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Polynomial* g = nullptr;
    for (const auto& e : elems_) {
      if (divides(e.lm(), p.lm())) {
        g = &e;
        break;
      }
    }
    if (g) {
      p = p.sub_mul_term(p.lc() / g->lc(), quotient_exp(p.lm(), g->lm()), *g);
    } else {
      rem.push_back(p.leading());
      p = p.tail();
    }
  }
  return Polynomial::from_terms(ring_, std::move(rem)).reordered(f.ring());
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& b) { return b.normal_form(f); }

}  // namespace resint
