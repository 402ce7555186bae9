#include "nfq/poly.hpp"

#include <algorithm>
#include <sstream>

#include "nfq/error.hpp"
#include "nfq/exact_linalg.hpp"

namespace nfq::poly {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly to_q(const ZPoly& f) { return QPoly(f.begin(), f.end()); }

std::string to_string(const ZPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(f); i >= 0; --i) {
    const mpz_class& c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

template <class P>
P derivative_impl(const P& f) {
  P d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}
ZPoly derivative(const ZPoly& f) { return derivative_impl(f); }
QPoly derivative(const QPoly& f) { return derivative_impl(f); }

template <class P>
P mul_impl(const P& a, const P& b) {
  if (a.empty() || b.empty()) return {};
  P c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}
ZPoly mul(const ZPoly& a, const ZPoly& b) { return mul_impl(a, b); }
QPoly mul(const QPoly& a, const QPoly& b) { return mul_impl(a, b); }

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

QPoly scale(const QPoly& a, const mpq_class& s) {
  QPoly c = a;
  for (auto& v : c) v *= s;
  trim(c);
  return c;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(ErrorKind::kMath, "polynomial division by zero");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {QPoly{}, r};
  QPoly q(r.size() - b.size() + 1);
  const mpq_class& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    mpq_class coef = r.back() / lead;
    q[shift] = coef;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= coef * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

namespace {
QPoly monic(QPoly f) {
  if (f.empty()) return f;
  mpq_class lead = f.back();
  for (auto& v : f) v /= lead;
  return f;
}
}  // namespace

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

XGcd xgcd(const QPoly& a_in, const QPoly& b_in) {
  QPoly r0 = a_in, r1 = b_in;
  trim(r0);
  trim(r1);
  QPoly s0{mpq_class(1)}, s1{}, t0{}, t1{mpq_class(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    QPoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {s0, t0, r0};
  mpq_class lead = r0.back();
  mpq_class inv = 1 / lead;
  return {scale(s0, inv), scale(t0, inv), scale(r0, inv)};
}

mpq_class eval(const QPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class eval(const ZPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class resultant(const ZPoly& f, const ZPoly& g) {
  const int m = degree(f), n = degree(g);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  IntMatrix s(size, size);
  // n shifted rows of f, then m shifted rows of g; highest coefficient first.
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i)
      s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + i)) = f[static_cast<std::size_t>(m - i)];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i)
      s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + i)) = g[static_cast<std::size_t>(n - i)];
  return det(s);
}

mpz_class discriminant(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1 || f.back() != 1) fail(ErrorKind::kInvalidInput, "discriminant: polynomial must be monic of degree >= 1");
  mpz_class r = resultant(f, derivative(f));
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) r = -r;
  return r;
}

bool is_squarefree(const ZPoly& f) { return degree(gcd(to_q(f), to_q(derivative(f)))) == 0; }

unsigned count_real_roots(const ZPoly& f) {
  if (degree(f) < 1) return 0;
  std::vector<QPoly> seq{to_q(f), to_q(derivative(f))};
  while (true) {
    QPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    seq.push_back(scale(r, mpq_class(-1)));
  }
  // Sign changes of the leading coefficients at -inf and +inf.
  auto changes = [&](bool at_neg_inf) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
      int s = sgn(p.back());
      if (at_neg_inf && degree(p) % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return static_cast<unsigned>(changes(true) - changes(false));
}

// ---------------------------------------------------------------------------

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) fail(ErrorKind::kMath, "non-invertible residue");
  return r;
}

bool is_one(const ZPoly& f) { return f.size() == 1 && f[0] == 1; }

}  // namespace

ZPoly reduce_mod(const ZPoly& f, const mpz_class& p) {
  ZPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = mod(f[i], p);
  trim(g);
  return g;
}

ZPoly mod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& p) { return reduce_mod(mul(a, b), p); }

ZPoly mod_sub(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  return reduce_mod(c, p);
}

std::pair<ZPoly, ZPoly> mod_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  if (b.empty()) fail(ErrorKind::kMath, "polynomial division by zero mod p");
  ZPoly r = reduce_mod(a, p);
  if (r.size() < b.size()) return {ZPoly{}, r};
  ZPoly q(r.size() - b.size() + 1);
  const mpz_class lead_inv = inv_mod(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    mpz_class coef = mod(r.back() * lead_inv, p);
    q[shift] = coef;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = mod(r[shift + i] - coef * b[i], p);
    trim(r);
  }
  trim(q);
  return {q, r};
}

ZPoly mod_monic(const ZPoly& f, const mpz_class& p) {
  if (f.empty()) return f;
  mpz_class inv = inv_mod(f.back(), p);
  ZPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = mod(f[i] * inv, p);
  return g;
}

ZPoly mod_gcd(ZPoly a, ZPoly b, const mpz_class& p) {
  a = reduce_mod(a, p);
  b = reduce_mod(b, p);
  while (!b.empty()) {
    ZPoly r = mod_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mod_monic(a, p);
}

ZPoly mod_powmod(const ZPoly& base, const mpz_class& e, const ZPoly& modulus, const mpz_class& p) {
  ZPoly result{mpz_class(1)};
  result = mod_divmod(result, modulus, p).second;
  ZPoly b = mod_divmod(base, modulus, p).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod_divmod(mod_mul(result, result, p), modulus, p).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod_divmod(mod_mul(result, b, p), modulus, p).second;
  }
  return result;
}

namespace {

ZPoly mod_derivative(const ZPoly& f, const mpz_class& p) { return reduce_mod(derivative(f), p); }

ZPoly mod_div_exact(const ZPoly& a, const ZPoly& b, const mpz_class& p) { return mod_divmod(a, b, p).first; }

// p-th root of a polynomial whose derivative vanishes (only x^{kp} terms).
ZPoly pth_root(const ZPoly& f, const mpz_class& p) {
  const unsigned long pu = p.get_ui();
  ZPoly g;
  for (std::size_t i = 0; i < f.size(); i += pu) g.push_back(f[i]);
  trim(g);
  return g;
}

// Square-free decomposition of a monic polynomial: (factor, multiplicity).
std::vector<std::pair<ZPoly, unsigned>> squarefree_mod(const ZPoly& f, const mpz_class& p) {
  std::vector<std::pair<ZPoly, unsigned>> out;
  ZPoly d = mod_derivative(f, p);
  if (d.empty()) {
    for (auto& [g, m] : squarefree_mod(pth_root(f, p), p)) out.emplace_back(g, m * static_cast<unsigned>(p.get_ui()));
    return out;
  }
  ZPoly c = mod_gcd(f, d, p);
  ZPoly w = mod_div_exact(f, c, p);
  unsigned i = 1;
  while (!is_one(w)) {
    ZPoly y = mod_gcd(w, c, p);
    ZPoly fac = mod_div_exact(w, y, p);
    if (!is_one(fac)) out.emplace_back(mod_monic(fac, p), i);
    ++i;
    w = y;
    c = mod_div_exact(c, y, p);
  }
  if (!is_one(c)) {
    for (auto& [g, m] : squarefree_mod(pth_root(c, p), p)) out.emplace_back(g, m * static_cast<unsigned>(p.get_ui()));
  }
  return out;
}

// Distinct-degree factorization of a square-free monic polynomial.
std::vector<std::pair<ZPoly, int>> ddf(ZPoly f, const mpz_class& p) {
  std::vector<std::pair<ZPoly, int>> out;
  const ZPoly x{mpz_class(0), mpz_class(1)};
  ZPoly h = x;
  int i = 1;
  while (degree(f) >= 2 * i) {
    h = mod_powmod(h, p, f, p);
    ZPoly g = mod_gcd(f, mod_sub(h, x, p), p);
    if (!is_one(g)) {
      out.emplace_back(g, i);
      f = mod_div_exact(f, g, p);
      h = mod_divmod(h, f, p).second;
    }
    ++i;
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus) into irreducible factors of degree d.
void edf(const ZPoly& f, int d, const mpz_class& p, gmp_randclass& rng, std::vector<ZPoly>& out) {
  if (degree(f) == d) {
    out.push_back(mod_monic(f, p));
    return;
  }
  const int n = degree(f);
  mpz_class pd;
  mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
  for (;;) {
    ZPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = rng.get_z_range(p);
    trim(a);
    if (degree(a) < 1) continue;
    ZPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      ZPoly t = mod_divmod(a, f, p).second, acc = t;
      for (int k = 1; k < d; ++k) {
        t = mod_divmod(mod_mul(t, t, p), f, p).second;
        ZPoly sum(std::max(acc.size(), t.size()));
        for (std::size_t i = 0; i < acc.size(); ++i) sum[i] += acc[i];
        for (std::size_t i = 0; i < t.size(); ++i) sum[i] += t[i];
        acc = reduce_mod(sum, p);
      }
      b = acc;
    } else {
      b = mod_sub(mod_powmod(a, (pd - 1) / 2, f, p), ZPoly{mpz_class(1)}, p);
    }
    ZPoly g = mod_gcd(f, b, p);
    if (degree(g) > 0 && degree(g) < n) {
      edf(g, d, p, rng, out);
      edf(mod_div_exact(f, g, p), d, p, rng, out);
      return;
    }
  }
}

bool factor_less(const ModFactor& a, const ModFactor& b) {
  if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
  for (std::size_t i = 0; i < a.factor.size(); ++i)
    if (a.factor[i] != b.factor[i]) return a.factor[i] < b.factor[i];
  return a.multiplicity < b.multiplicity;
}

}  // namespace

std::vector<ModFactor> factor_mod(const ZPoly& f_in, const mpz_class& p) {
  ZPoly f = reduce_mod(f_in, p);
  if (degree(f) < 1) fail(ErrorKind::kInvalidInput, "factor_mod: polynomial is constant mod p");
  f = mod_monic(f, p);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  std::vector<ModFactor> out;
  for (const auto& [sq, mult] : squarefree_mod(f, p)) {
    for (const auto& [part, d] : ddf(sq, p)) {
      std::vector<ZPoly> irreducibles;
      edf(part, d, p, rng, irreducibles);
      for (auto& g : irreducibles) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

}  // namespace nfq::poly
