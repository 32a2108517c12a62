#include "upoly.hpp"

#include <algorithm>

#include "resint/errors.hpp"

namespace resint::upoly {

QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly q_scale(const QPoly& a, const mpq_class& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw Error(ErrorKind::InexactDivision, "univariate division by zero");
  QPoly r = a;
  if (a.size() < b.size()) return {{}, r};
  QPoly q(a.size() - b.size() + 1);
  mpq_class inv = 1 / b.back();
  for (int k = deg(r) - deg(b); k >= 0; --k) {
    mpq_class c = r[k + b.size() - 1] * inv;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

QPoly q_monic(const QPoly& a) {
  if (a.empty()) return a;
  return q_scale(a, 1 / a.back());
}

QPoly q_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = q_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return q_monic(a);
}

QPoly q_derivative(const QPoly& a) {
  if (a.size() <= 1) return {};
  QPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
  trim(r);
  return r;
}

void q_ext_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = q_divmod(r0, r1);
    QPoly s2 = q_sub(s0, q_mul(q, s1));
    QPoly t2 = q_sub(t0, q_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  mpq_class inv = r0.empty() ? mpq_class(1) : 1 / r0.back();
  g = q_scale(r0, inv);
  s = q_scale(s0, inv);
  t = q_scale(t0, inv);
}

std::vector<std::pair<QPoly, int>> q_squarefree(const QPoly& a) {
  std::vector<std::pair<QPoly, int>> out;
  if (deg(a) <= 0) return out;
  QPoly f = q_monic(a);
  QPoly fp = q_derivative(f);
  QPoly c = q_gcd(f, fp);
  QPoly w = q_divmod(f, c).first;
  QPoly y = q_divmod(fp, c).first;
  int i = 1;
  for (;;) {
    QPoly z = q_sub(y, q_derivative(w));
    if (z.empty()) {
      if (deg(w) > 0) out.push_back({q_monic(w), i});
      break;
    }
    QPoly g = q_gcd(w, z);
    if (deg(g) > 0) out.push_back({g, i});
    w = q_divmod(w, g).first;
    y = q_divmod(z, g).first;
    ++i;
    if (deg(w) <= 0) break;
  }
  return out;
}

ZPoly to_primitive_z(const QPoly& a) {
  mpz_class l = 1;
  for (const auto& c : a) l = lcm(l, mpz_class(c.get_den()));
  ZPoly z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = mpz_class(a[i] * l);
  return z_primitive(z);
}

QPoly to_q(const ZPoly& a) {
  QPoly q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i];
  return q;
}

mpz_class z_content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly z_primitive(const ZPoly& a) {
  mpz_class g = z_content(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

FPoly f_reduce(const ZPoly& a, std::int64_t p) {
  FPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class m = a[i] % p;
    if (m < 0) m += p;
    r[i] = m.get_si();
  }
  trim(r);
  return r;
}

FPoly f_sub(const FPoly& a, const FPoly& b, std::int64_t p) {
  FPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod(r[i] - b[i], p);
  trim(r);
  return r;
}

FPoly f_mul(const FPoly& a, const FPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

std::pair<FPoly, FPoly> f_divmod(const FPoly& a, const FPoly& b, std::int64_t p) {
  FPoly r = a;
  if (a.size() < b.size()) return {{}, r};
  FPoly q(a.size() - b.size() + 1, 0);
  std::int64_t inv = inv_mod(b.back(), p);
  for (int k = deg(r) - deg(b); k >= 0; --k) {
    std::int64_t c = r[k + b.size() - 1] * inv % p;
    q[k] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = mod(r[k + j] - c * b[j], p);
  }
  trim(q);
  trim(r);
  return {q, r};
}

FPoly f_monic(const FPoly& a, std::int64_t p) {
  if (a.empty()) return a;
  std::int64_t inv = inv_mod(a.back(), p);
  FPoly r = a;
  for (auto& c : r) c = c * inv % p;
  return r;
}

FPoly f_gcd(FPoly a, FPoly b, std::int64_t p) {
  while (!b.empty()) {
    FPoly r = f_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return f_monic(a, p);
}

void f_ext_gcd(const FPoly& a, const FPoly& b, std::int64_t p, FPoly& g, FPoly& s, FPoly& t) {
  FPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = f_divmod(r0, r1, p);
    FPoly s2 = f_sub(s0, f_mul(q, s1, p), p);
    FPoly t2 = f_sub(t0, f_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::int64_t inv = inv_mod(r0.back(), p);
  auto sc = [&](FPoly x) {
    for (auto& c : x) c = c * inv % p;
    trim(x);
    return x;
  };
  g = sc(r0);
  s = sc(s0);
  t = sc(t0);
}

FPoly f_derivative(const FPoly& a, std::int64_t p) {
  if (a.size() <= 1) return {};
  FPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<std::int64_t>(i % p) % p;
  trim(r);
  return r;
}

FPoly f_powmod(const FPoly& base, const mpz_class& e, const FPoly& m, std::int64_t p) {
  FPoly r = {1};
  FPoly b = f_divmod(base, m, p).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = f_divmod(f_mul(r, r, p), m, p).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = f_divmod(f_mul(r, b, p), m, p).second;
  }
  return r;
}

// f monic squarefree mod p; returns monic irreducible factors.
std::vector<FPoly> berlekamp_free_factor(const FPoly& f, std::int64_t p, std::mt19937_64& rng) {
  std::vector<FPoly> out;
  std::vector<std::pair<FPoly, int>> ddf;
  FPoly rest = f;
  FPoly h = {0, 1};
  FPoly x = {0, 1};
  for (int d = 1; 2 * d <= deg(rest); ++d) {
    h = f_powmod(h, mpz_class(p), rest, p);
    FPoly g = f_gcd(rest, f_sub(h, x, p), p);
    if (deg(g) > 0) {
      ddf.push_back({g, d});
      rest = f_divmod(rest, g, p).first;
      h = f_divmod(h, rest, p).second;
    }
  }
  if (deg(rest) > 0) ddf.push_back({rest, deg(rest)});

  for (auto& [g, d] : ddf) {
    std::vector<FPoly> stack = {g};
    while (!stack.empty()) {
      FPoly u = stack.back();
      stack.pop_back();
      if (deg(u) == d) {
        out.push_back(f_monic(u, p));
        continue;
      }
      mpz_class pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
      mpz_class e = (pd - 1) / 2;
      for (;;) {
        FPoly a(deg(u));
        for (auto& c : a) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        trim(a);
        if (deg(a) <= 0) continue;
        FPoly b = f_sub(f_powmod(a, e, u, p), {1}, p);
        FPoly w = f_gcd(u, b, p);
        if (deg(w) > 0 && deg(w) < deg(u)) {
          stack.push_back(w);
          stack.push_back(f_divmod(u, w, p).first);
          break;
        }
      }
    }
  }
  return out;
}

ZPoly lift_to_z(const FPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  return r;
}

ZPoly z_mod(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] % m;
    if (r[i] < 0) r[i] += m;
  }
  trim(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

ZPoly z_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

ZPoly z_scale(const ZPoly& a, const mpz_class& c) {
  ZPoly r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

FPoly to_f(const ZPoly& a, std::int64_t p) { return f_reduce(a, p); }

FPoly f_add(const FPoly& a, const FPoly& b, std::int64_t p) {
  FPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

// Lift f ≡ g*h (mod p), g monic, until the modulus reaches target; h keeps lc(f).
mpz_class hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, std::int64_t p, const mpz_class& target) {
  FPoly gg, s, t;
  f_ext_gcd(to_f(g, p), to_f(h, p), p, gg, s, t);
  mpz_class modulus = p;
  while (modulus < target) {
    ZPoly e = z_sub(f, z_mul(g, h));
    for (auto& c : e) c /= modulus;
    FPoly ef = to_f(e, p);
    auto [q, tau] = f_divmod(f_mul(t, ef, p), to_f(g, p), p);
    FPoly sigma = f_add(f_mul(s, ef, p), f_mul(q, to_f(h, p), p), p);
    g = z_add(g, z_scale(lift_to_z(tau), modulus));
    h = z_add(h, z_scale(lift_to_z(sigma), modulus));
    modulus *= p;
  }
  return modulus;
}

ZPoly symmetric(const ZPoly& a, const mpz_class& m) {
  ZPoly r = z_mod(a, m);
  mpz_class half = m / 2;
  for (auto& c : r) {
    if (c > half) c -= m;
  }
  trim(r);
  return r;
}

bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  int n = deg(f);
  if (n <= 1) return {f};
  const mpz_class lc = f.back();
  std::mt19937_64 rng(0x5eed);

  std::int64_t best_p = 0;
  std::vector<FPoly> best;
  int good = 0;
  for (std::int64_t p = 3; good < 5 && p < 2000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (mpz_class(lc % p) == 0) continue;
    FPoly fp = f_monic(to_f(f, p), p);
    if (deg(fp) != n) continue;
    if (deg(f_gcd(fp, f_derivative(fp, p), p)) > 0) continue;
    std::vector<FPoly> facs = berlekamp_free_factor(fp, p, rng);
    ++good;
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = facs;
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw Error(ErrorKind::FactorizationScope, "no suitable prime for factorization");
  if (best.size() == 1) return {f};
  std::int64_t p = best_p;
  std::sort(best.begin(), best.end());

  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class root = sqrt(norm2) + 1;
  mpz_class bound = 2 * abs(lc) * root;
  mpz_class two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  bound *= two_n;

  std::vector<ZPoly> lifted;
  ZPoly cur = f;
  mpz_class modulus = p;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    ZPoly g = lift_to_z(best[i]);
    FPoly hp = {static_cast<std::int64_t>(mpz_class(((lc % p) + p) % p).get_si())};
    for (std::size_t j = i + 1; j < best.size(); ++j) hp = f_mul(hp, best[j], p);
    ZPoly h = lift_to_z(hp);
    h.back() = lc;
    modulus = hensel_pair(cur, g, h, p, bound);
    lifted.push_back(z_mod(g, modulus));
    cur = z_mod(h, modulus);
    cur.back() = lc;
  }
  {
    // last factor: monic cofactor of lc
    ZPoly last = cur;
    mpz_class inv;
    mpz_class lcm_ = lc % modulus;
    if (lcm_ < 0) lcm_ += modulus;
    mpz_invert(inv.get_mpz_t(), lcm_.get_mpz_t(), modulus.get_mpz_t());
    lifted.push_back(z_mod(z_scale(last, inv), modulus));
  }

  std::vector<ZPoly> out;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  ZPoly F = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      ZPoly g = {F.back()};
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        if (pick[k]) g = z_mod(z_mul(g, lifted[remaining[k]]), modulus);
      }
      g = z_primitive(symmetric(g, modulus));
      auto [q, r] = q_divmod(to_q(F), to_q(g));
      if (r.empty()) {
        out.push_back(g);
        F = to_primitive_z(q);
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
          if (!pick[k]) keep.push_back(remaining[k]);
        }
        remaining = keep;
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  if (deg(F) > 0) out.push_back(z_primitive(F));
  return out;
}

}  // namespace resint::upoly
