#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

#include "resint/ideals.hpp"

namespace resint {

struct Ideal::Cache {
  std::mutex m;
  std::vector<std::shared_ptr<const GroebnerBasis>> bases;
};

Ideal::Ideal(Ring r, std::vector<Polynomial> gens) : ring_(std::move(r)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.ring() != ring_) {
      if (!g.ring().same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "generator lives in a different ring");
      g = g.reordered(ring_);
    }
    gens_.push_back(std::move(g));
  }
}

Ideal Ideal::parse(const Ring& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& s : gens) ps.push_back(parse_polynomial(r, s));
  return Ideal(r, std::move(ps));
}

GroebnerBasis Ideal::basis(const MonomialOrder& order) const {
  if (!cache_) throw Error(ErrorKind::Precondition, "ideal has no ring");
  {
    std::lock_guard<std::mutex> lock(cache_->m);
    for (const auto& b : cache_->bases) {
      if (b->order() == order) return *b;
    }
  }
  auto fresh = std::make_shared<const GroebnerBasis>(groebner_basis(ring_, gens_, order));
  std::lock_guard<std::mutex> lock(cache_->m);
  for (const auto& b : cache_->bases) {
    if (b->order() == order) return *b;
  }
  cache_->bases.push_back(fresh);
  return *fresh;
}

const GroebnerBasis& Ideal::basis() const {
  if (!cache_) throw Error(ErrorKind::Precondition, "ideal has no ring");
  const MonomialOrder& order = ring_.order();
  {
    std::lock_guard<std::mutex> lock(cache_->m);
    for (const auto& b : cache_->bases) {
      if (b->order() == order) return *b;
    }
  }
  auto fresh = std::make_shared<const GroebnerBasis>(groebner_basis(ring_, gens_, order));
  std::lock_guard<std::mutex> lock(cache_->m);
  for (const auto& b : cache_->bases) {
    if (b->order() == order) return *b;
  }
  cache_->bases.push_back(fresh);
  return *cache_->bases.back();
}

bool Ideal::contains(const Polynomial& f) const { return basis().contains(f); }

bool Ideal::contains(const Ideal& j) const {
  if (!j.ring_.same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "containment across rings");
  const GroebnerBasis& b = basis();
  if (b.is_unit()) return true;
  for (const auto& g : j.generators()) {
    if (!b.contains(g)) return false;
  }
  return true;
}

Ideal Ideal::operator+(const Ideal& o) const {
  if (!o.ring_.same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "sum across rings");
  std::vector<Polynomial> g = gens_;
  for (const auto& p : o.gens_) g.push_back(p.reordered(ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  std::vector<Polynomial> g;
  for (const auto& a : gens_) {
    for (const auto& b : o.gens_) g.push_back(a * b.reordered(ring_));
  }
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::plus(const std::vector<Polynomial>& extra) const {
  std::vector<Polynomial> g = gens_;
  g.insert(g.end(), extra.begin(), extra.end());
  return Ideal(ring_, std::move(g));
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  if (gens_.empty()) s += "0";
  return s + ")";
}

std::string Ideal::canonical() const {
  const GroebnerBasis& b = basis();
  std::string s = "(";
  for (std::size_t i = 0; i < b.elements().size(); ++i) {
    if (i) s += ", ";
    s += b.elements()[i].to_string();
  }
  if (b.elements().empty()) s += "0";
  return s + ")";
}

Ideal change_ring(const Ideal& i, const Ring& target) {
  std::vector<Polynomial> g;
  for (const auto& p : i.generators()) g.push_back(change_ring(p, target));
  return Ideal(target, std::move(g));
}

Ideal substitute(const Ideal& i, const std::vector<Polynomial>& images, const Ring& target) {
  std::vector<Polynomial> g;
  for (const auto& p : i.generators()) g.push_back(substitute(p, images, target));
  return Ideal(target, std::move(g));
}

Ideal eliminate(const Ideal& i, const std::vector<std::size_t>& drop) {
  const Ring& r = i.ring();
  std::vector<bool> dropped(r.size(), false);
  for (std::size_t v : drop) dropped.at(v) = true;
  std::vector<std::string> first, kept;
  for (std::size_t v = 0; v < r.size(); ++v) (dropped[v] ? first : kept).push_back(r.name(v));
  if (kept.empty()) throw Error(ErrorKind::Precondition, "cannot eliminate every variable");
  MonomialOrder kept_order = r.order().kind == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : r.order();
  Ring small(kept, kept_order);
  if (first.empty()) return change_ring(i, small);

  std::vector<std::string> all = first;
  all.insert(all.end(), kept.begin(), kept.end());
  Ring big(all, MonomialOrder::elimination(first.size()));
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(change_ring(g, big));
  GroebnerBasis b = groebner_basis(big, gens, big.order());
  std::vector<Polynomial> out;
  for (const auto& g : b.elements()) {
    auto sup = g.support();
    bool free = true;
    for (std::size_t v = 0; v < first.size(); ++v) free = free && !sup[v];
    if (free) out.push_back(change_ring(g, small));
  }
  return Ideal(small, std::move(out));
}

Ideal eliminate(const Ideal& i, const std::vector<std::string>& drop) {
  std::vector<std::size_t> idx;
  for (const auto& n : drop) idx.push_back(i.ring().require(n));
  return eliminate(i, idx);
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!a.ring().same_variables(b.ring())) throw Error(ErrorKind::RingMismatch, "intersection across rings");
  const Ring& r = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal(r);
  std::string t = r.fresh_name("~t");
  std::vector<std::string> names = {t};
  names.insert(names.end(), r.names().begin(), r.names().end());
  Ring big(names, MonomialOrder::elimination(1));
  Polynomial tv = Polynomial::variable(big, 0);
  Polynomial one_minus = Polynomial::constant(big, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(tv * change_ring(g, big));
  for (const auto& g : b.generators()) gens.push_back(one_minus * change_ring(g, big));
  Ideal res = eliminate(Ideal(big, std::move(gens)), std::vector<std::size_t>{0});
  return change_ring(res, r);
}

Ideal quotient(const Ideal& i, const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::Precondition, "quotient by the zero polynomial");
  if (f.is_constant()) return i;
  Polynomial g = f.reordered(i.ring());
  Ideal meet = intersect(i, Ideal(i.ring(), {g}));
  std::vector<Polynomial> out;
  for (const auto& h : meet.basis().elements()) out.push_back(exact_divide(h.reordered(i.ring()), g));
  return Ideal(i.ring(), std::move(out));
}

Ideal quotient(const Ideal& i, const Ideal& j) {
  if (j.is_zero()) throw Error(ErrorKind::Precondition, "quotient by the zero ideal");
  std::optional<Ideal> acc;
  for (const auto& g : j.generators()) {
    Ideal q = quotient(i, g);
    acc = acc ? intersect(*acc, q) : q;
  }
  return *acc;
}

Saturation saturate(const Ideal& i, const Polynomial& g) {
  if (g.is_zero()) throw Error(ErrorKind::Precondition, "saturation by the zero polynomial");
  if (g.is_constant()) throw Error(ErrorKind::Precondition, "saturation by a unit");
  Ideal cur = i;
  int k = 0;
  for (;;) {
    Ideal next = quotient(cur, g);
    if (cur.contains(next)) return {cur, k};
    cur = Ideal(next.ring(), next.basis().elements());
    ++k;
  }
}

Saturation saturate(const Ideal& i, const Ideal& j) {
  if (j.is_zero()) throw Error(ErrorKind::Precondition, "saturation by the zero ideal");
  if (j.is_trivial()) throw Error(ErrorKind::Precondition, "saturation by the unit ideal");
  std::optional<Ideal> acc;
  int e = 0;
  for (const auto& g : j.generators()) {
    Saturation s = saturate(i, g);
    e = std::max(e, s.exponent);
    acc = acc ? intersect(*acc, s.ideal) : s.ideal;
  }
  return {Ideal(acc->ring(), acc->basis().elements()), e};
}

std::vector<std::size_t> maximal_independent_set(const Ideal& i) {
  const GroebnerBasis& b = i.basis();
  if (b.is_unit()) throw Error(ErrorKind::EmptyVariety, "the unit ideal has no dimension");
  std::size_t n = i.ring().size();
  if (n > 20) throw Error(ErrorKind::Precondition, "too many variables for the independent-set search");
  std::vector<std::uint32_t> masks;
  for (const auto& g : b.elements()) {
    std::uint32_t m = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (g.lm()[v]) m |= 1u << v;
    }
    masks.push_back(m);
  }
  std::uint32_t best = 0;
  int best_size = -1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    int sz = __builtin_popcount(s);
    if (sz <= best_size) continue;
    bool ok = true;
    for (auto m : masks) {
      if ((m & ~s) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      best = s;
      best_size = sz;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (best & (1u << v)) out.push_back(v);
  }
  return out;
}

int krull_dimension(const Ideal& i) { return static_cast<int>(maximal_independent_set(i).size()); }

std::optional<int> dimension(const Ideal& i) {
  if (i.is_trivial()) return std::nullopt;
  return krull_dimension(i);
}

bool radical_contains(const Ideal& i, const Polynomial& f) {
  if (f.is_zero()) return true;
  const Ring& r = i.ring();
  Ring big = r.extended({r.fresh_name("~w")});
  Polynomial w = Polynomial::variable(big, r.size());
  std::vector<Polynomial> gens;
  for (const auto& g : i.generators()) gens.push_back(change_ring(g, big));
  gens.push_back(Polynomial::constant(big, 1) - w * change_ring(f, big));
  return Ideal(big, std::move(gens)).is_trivial();
}

bool locus_subset(const Ideal& a, const Ideal& b) {
  if (a.is_trivial()) return true;
  for (const auto& g : b.generators()) {
    if (a.contains(g)) continue;
    if (!radical_contains(a, g)) return false;
  }
  return true;
}

bool is_zero_dimensional(const Ideal& i) {
  const GroebnerBasis& b = i.basis();
  if (b.is_unit()) return false;
  std::size_t n = i.ring().size();
  std::vector<bool> pure(n, false);
  for (const auto& g : b.elements()) {
    const Exponents& m = g.lm();
    std::size_t nz = 0, at = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v]) {
        ++nz;
        at = v;
      }
    }
    if (nz == 1) pure[at] = true;
  }
  return std::all_of(pure.begin(), pure.end(), [](bool x) { return x; });
}

std::vector<Exponents> standard_monomials(const Ideal& i) {
  if (i.is_trivial()) return {};
  if (!is_zero_dimensional(i)) throw Error(ErrorKind::Dimension, "ideal is not zero-dimensional");
  const GroebnerBasis& b = i.basis();
  std::size_t n = i.ring().size();
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (;;) {
      bool blocked = false;
      for (const auto& g : b.elements()) {
        bool div = true;
        for (std::size_t k = 0; k < n && div; ++k) div = g.lm()[k] <= cur[k];
        if (div) {
          blocked = true;
          break;
        }
      }
      if (blocked) break;
      walk(v + 1);
      ++cur[v];
    }
    cur[v] = 0;
  };
  walk(0);
  std::sort(out.begin(), out.end(),
            [&](const Exponents& a, const Exponents& c) { return i.ring().order().compare(a, c) < 0; });
  return out;
}

std::size_t vector_space_dimension(const Ideal& i) { return standard_monomials(i).size(); }

}  // namespace resint
