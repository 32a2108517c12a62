#include "resint/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace resint {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::RingMismatch: return "ring-mismatch";
    case ErrorKind::UnknownVariable: return "unknown-variable";
    case ErrorKind::UnboundVariable: return "unbound-variable";
    case ErrorKind::InexactDivision: return "inexact-division";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::FactorizationScope: return "factorization-scope";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::EmptyVariety: return "empty-variety";
    case ErrorKind::NonCompleteIntersection: return "non-complete-intersection";
    case ErrorKind::InvalidCenter: return "invalid-center";
    case ErrorKind::ContainedInCenter: return "contained-in-center";
    case ErrorKind::ImproperIntersection: return "improper-intersection";
    case ErrorKind::IntersectionScope: return "intersection-scope";
    case ErrorKind::NotSmooth: return "not-smooth";
    case ErrorKind::Complementarity: return "complementarity";
    case ErrorKind::AnnotationRequired: return "annotation-required";
    case ErrorKind::InconsistentStrata: return "inconsistent-strata";
    case ErrorKind::NonstandardPerversity: return "nonstandard-perversity";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

std::string scalar_to_string(const Scalar& c) { return c.get_str(); }

namespace {

int grevlex_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  switch (kind) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    case Kind::Grevlex:
      return grevlex_range(a, b, 0, a.size());
    case Kind::Block: {
      std::size_t k = std::min(block, a.size());
      int c = grevlex_range(a, b, 0, k);
      if (c != 0) return c;
      return grevlex_range(a, b, k, a.size());
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case Kind::Lex: return "lex";
    case Kind::Grevlex: return "grevlex";
    case Kind::Block: return "block(" + std::to_string(block) + ")";
  }
  return "?";
}

Ring::Ring(std::vector<std::string> names, MonomialOrder order) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw Error(ErrorKind::Validation, "duplicate variable name '" + names[i] + "'");
    }
  }
  d_ = std::make_shared<const Data>(Data{std::move(names), order});
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  if (!d_) return std::nullopt;
  for (std::size_t i = 0; i < d_->names.size(); ++i) {
    if (d_->names[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *i;
}

Ring Ring::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> n = names();
  n.insert(n.end(), extra.begin(), extra.end());
  return Ring(std::move(n), order().kind == MonomialOrder::Kind::Block ? MonomialOrder::grevlex() : order());
}

std::string Ring::fresh_name(const std::string& stem) const {
  std::string s = stem;
  while (index_of(s)) s += "'";
  return s;
}

bool Ring::operator==(const Ring& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->names == o.d_->names && d_->order == o.d_->order;
}

bool Ring::same_variables(const Ring& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->names == o.d_->names;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents quotient_exp(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

Polynomial Polynomial::constant(const Ring& r, const Scalar& c) {
  Polynomial p(r);
  if (c != 0) p.terms_.push_back({Exponents(r.size(), 0), c});
  return p;
}

Polynomial Polynomial::variable(const Ring& r, std::size_t i) {
  Exponents e(r.size(), 0);
  e.at(i) = 1;
  return monomial(r, std::move(e), 1);
}

Polynomial Polynomial::monomial(const Ring& r, Exponents e, const Scalar& c) {
  Polynomial p(r);
  if (c != 0) p.terms_.push_back({std::move(e), c});
  return p;
}

Polynomial Polynomial::from_terms(const Ring& r, std::vector<Term> terms) {
  const MonomialOrder& ord = r.order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.exp, b.exp) > 0; });
  Polynomial p(r);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exp) == 0);
}

std::optional<Scalar> Polynomial::constant_value() const {
  if (terms_.empty()) return Scalar(0);
  if (is_constant()) return terms_[0].coef;
  return std::nullopt;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max<int>(d, degree_of(t.exp));
  return d;
}

int Polynomial::degree(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.exp[var]);
  return d;
}

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(ring_.size(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i]) s[i] = true;
    }
  }
  return s;
}

std::size_t Polynomial::support_size() const {
  auto s = support();
  return std::count(s.begin(), s.end(), true);
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (ring_ != o.ring_) throw Error(ErrorKind::RingMismatch, "operands live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  return sub_mul_term(-1, Exponents(ring_.size(), 0), o);
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_ring(o);
  return sub_mul_term(1, Exponents(ring_.size(), 0), o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  if (o.size() == 1) return mul_term(o.terms_[0].exp, o.terms_[0].coef);
  if (size() == 1) return o.mul_term(terms_[0].exp, terms_[0].coef);
  std::vector<Term> prod;
  prod.reserve(size() * o.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Exponents e(a.exp.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exp[i] + b.exp[i];
      prod.push_back({std::move(e), a.coef * b.coef});
    }
  }
  return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / lc());
}

Polynomial Polynomial::tail() const {
  Polynomial r(ring_);
  if (terms_.size() > 1) r.terms_.assign(terms_.begin() + 1, terms_.end());
  return r;
}

Polynomial Polynomial::mul_term(const Exponents& e, const Scalar& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents x(t.exp.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = t.exp[i] + e[i];
    r.terms_.push_back({std::move(x), t.coef * c});
  }
  return r;
}

Polynomial Polynomial::sub_mul_term(const Scalar& c, const Exponents& e, const Polynomial& g) const {
  const MonomialOrder& ord = ring_.order();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  Exponents shifted(e.size());
  auto load = [&](std::size_t k) {
    for (std::size_t v = 0; v < e.size(); ++v) shifted[v] = g.terms_[k].exp[v] + e[v];
  };
  if (j < g.terms_.size()) load(j);
  while (i < terms_.size() || j < g.terms_.size()) {
    int cmp;
    if (i == terms_.size()) cmp = -1;
    else if (j == g.terms_.size()) cmp = 1;
    else cmp = ord.compare(terms_[i].exp, shifted);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({shifted, -c * g.terms_[j].coef});
      if (++j < g.terms_.size()) load(j);
    } else {
      Scalar v = terms_[i].coef - c * g.terms_[j].coef;
      if (v != 0) r.terms_.push_back({terms_[i].exp, std::move(v)});
      ++i;
      if (++j < g.terms_.size()) load(j);
    }
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!ring_.same_variables(o.ring_) || terms_.size() != o.terms_.size()) return false;
  if (ring_.order() == o.ring_.order()) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
    }
    return true;
  }
  return (*this - o.reordered(ring_)).is_zero();
}

Polynomial Polynomial::reordered(const Ring& r) const {
  if (!ring_.same_variables(r)) throw Error(ErrorKind::RingMismatch, "reordering requires identical variables");
  if (ring_.order() == r.order()) {
    Polynomial p = *this;
    p.ring_ = r;
    return p;
  }
  return from_terms(r, terms_);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coef < 0;
    Scalar a = abs(t.coef);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (!t.exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_.name(i);
      if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
    }
    if (mono.empty()) os << scalar_to_string(a);
    else if (a == 1) os << mono;
    else os << scalar_to_string(a) << "*" << mono;
  }
  return os.str();
}

Polynomial pow(const Polynomial& f, unsigned k) {
  Polynomial r = Polynomial::constant(f.ring(), 1);
  Polynomial b = f;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

namespace {

class Parser {
 public:
  Parser(const Ring& r, std::string_view s) : ring_(r), s_(s) {}

  Polynomial run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    Polynomial p = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial sum() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Polynomial acc = product();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc += product();
      else if (eat('-')) acc -= product();
      else return acc;
    }
  }

  Polynomial product() {
    Polynomial acc = power();
    while (eat('*')) acc *= power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    while (eat('^')) {
      skip();
      std::size_t start = pos_;
      mpz_class e = digits();
      if (e > 65535) throw ParseError("exponent too large", start);
      base = pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", start);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits();
      mpz_class den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t at = ++pos_;
        den = digits();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Scalar q(num, den);
      q.canonicalize();
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_++;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
        ++pos_;
      }
      std::string_view name = s_.substr(start, pos_ - start);
      auto idx = ring_.index_of(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  const Ring& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& r, std::string_view text) { return Parser(r, text).run(); }

Polynomial differentiate(const Polynomial& f, std::size_t var) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (!t.exp[var]) continue;
    Term d = t;
    d.coef *= t.exp[var];
    d.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images, const Ring& target) {
  if (images.size() != f.ring().size()) throw Error(ErrorKind::UnboundVariable, "substitution needs one image per variable");
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t v, unsigned k) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[v]);
    return cache[k];
  };
  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    Polynomial m = Polynomial::constant(target, t.coef);
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      if (t.exp[v]) m *= power_of(v, t.exp[v]);
    }
    for (auto& x : m.terms()) acc.push_back(x);
  }
  return Polynomial::from_terms(target, std::move(acc));
}

Polynomial substitute_var(const Polynomial& f, std::size_t var, const Polynomial& value) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < f.ring().size(); ++i) images.push_back(Polynomial::variable(f.ring(), i));
  images[var] = value;
  return substitute(f, images, f.ring());
}

Scalar evaluate(const Polynomial& f, const std::vector<Scalar>& point) {
  Scalar s = 0;
  for (const auto& t : f.terms()) {
    Scalar m = t.coef;
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      for (unsigned k = 0; k < t.exp[v]; ++k) m *= point[v];
    }
    s += m;
  }
  return s;
}

Polynomial change_ring(const Polynomial& f, const Ring& target) {
  if (f.ring() == target) return f;
  std::vector<std::size_t> map(f.ring().size(), SIZE_MAX);
  auto sup = f.support();
  for (std::size_t i = 0; i < f.ring().size(); ++i) {
    auto j = target.index_of(f.ring().name(i));
    if (j) map[i] = *j;
    else if (sup[i]) throw Error(ErrorKind::UnknownVariable, "variable '" + f.ring().name(i) + "' missing from target ring");
  }
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Exponents e(target.size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i]) e[map[i]] = t.exp[i];
    }
    out.push_back({std::move(e), t.coef});
  }
  return Polynomial::from_terms(target, std::move(out));
}

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  DivisionResult res;
  const Ring& r = f.ring();
  for (const auto& g : divisors) {
    if (g.ring() != r) throw Error(ErrorKind::RingMismatch, "divisor lives in a different ring");
    res.quotients.emplace_back(r);
  }
  res.remainder = Polynomial(r);
  Polynomial p = f;
  std::vector<Term> rem;
  std::vector<Term> quot;
  while (!p.is_zero()) {
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& g = divisors[i];
      if (g.is_zero() || !divides(g.lm(), p.lm())) continue;
      Exponents e = quotient_exp(p.lm(), g.lm());
      Scalar c = p.lc() / g.lc();
      res.quotients[i] += Polynomial::monomial(r, e, c);
      p = p.sub_mul_term(c, e, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(p.leading());
      p = p - Polynomial::monomial(r, p.lm(), p.lc());
    }
  }
  res.remainder = Polynomial::from_terms(r, std::move(rem));
  return res;
}

std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw Error(ErrorKind::InexactDivision, "division by zero polynomial");
  auto res = divide(f, {g});
  if (!res.remainder.is_zero()) return std::nullopt;
  return res.quotients[0];
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  auto q = try_divide(f, g);
  if (!q) throw Error(ErrorKind::InexactDivision, g.to_string() + " does not divide " + f.to_string());
  return *q;
}

bool is_homogeneous(const Polynomial& f) {
  if (f.is_zero()) return true;
  unsigned d = degree_of(f.terms()[0].exp);
  for (const auto& t : f.terms()) {
    if (degree_of(t.exp) != d) return false;
  }
  return true;
}

Polynomial homogenize(const Polynomial& f, const Ring& target, std::size_t pivot) {
  Polynomial g = change_ring(f, target);
  if (g.degree(pivot) > 0)
    throw Error(ErrorKind::Precondition, "homogenizing variable already occurs");
  int d = g.total_degree();
  std::vector<Term> out;
  for (auto t : g.terms()) {
    t.exp[pivot] += d - degree_of(t.exp);
    out.push_back(std::move(t));
  }
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial dehomogenize(const Polynomial& f, std::size_t pivot, const Ring& target) {
  if (target.size() + 1 != f.ring().size())
    throw Error(ErrorKind::Precondition, "dehomogenization target must have one variable fewer");
  if (!is_homogeneous(f)) throw Error(ErrorKind::Precondition, "dehomogenizing a non-homogeneous polynomial");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Exponents e;
    e.reserve(target.size());
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (i != pivot) e.push_back(t.exp[i]);
    }
    out.push_back({std::move(e), t.coef});
  }
  return Polynomial::from_terms(target, std::move(out));
}

std::map<Exponents, Polynomial> coefficients_in(const Polynomial& f, const std::vector<std::size_t>& vars) {
  std::map<Exponents, std::vector<Term>> buckets;
  for (const auto& t : f.terms()) {
    Exponents key(vars.size());
    Term rest = t;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      key[k] = t.exp[vars[k]];
      rest.exp[vars[k]] = 0;
    }
    buckets[key].push_back(std::move(rest));
  }
  std::map<Exponents, Polynomial> out;
  for (auto& [k, ts] : buckets) out.emplace(k, Polynomial::from_terms(f.ring(), std::move(ts)));
  return out;
}

std::vector<Polynomial> univariate_coefficients(const Polynomial& f, std::size_t var) {
  int d = std::max(f.degree(var), 0);
  std::vector<std::vector<Term>> buckets(d + 1);
  for (const auto& t : f.terms()) {
    Term rest = t;
    rest.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(rest));
  }
  std::vector<Polynomial> out;
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(f.ring(), std::move(b)));
  return out;
}

}  // namespace resint
