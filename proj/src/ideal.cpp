#include "nfq/ideal.hpp"

#include <algorithm>
#include <map>

#include "nfq/error.hpp"
#include "nfq/spec_io.hpp"

namespace nfq {

namespace {

mpz_class content(const IntMatrix& m) {
  mpz_class g = 0;
  for (const auto& v : m.data()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

// Normalizes an n x n full-rank HNF basis with its denominator.
FractionalIdeal normalize(IntMatrix h, mpz_class d) {
  if (d < 0) d = -d;
  mpz_class g = content(h);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  if (g != 1) {
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) mpz_divexact(h(i, j).get_mpz_t(), h(i, j).get_mpz_t(), g.get_mpz_t());
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
  }
  return FractionalIdeal{d, std::move(h)};
}

mpz_class diagonal_product(const IntMatrix& h) {
  mpz_class d = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) d *= h(i, i);
  return d;
}

FieldElement column_element(const IntMatrix& m, std::size_t j) {
  FieldElement x;
  for (std::size_t i = 0; i < m.rows(); ++i) x.coords.emplace_back(m(i, j));
  return x;
}

std::vector<mpz_class> int_coords(const FieldElement& x) {
  std::vector<mpz_class> v;
  for (const auto& c : x.coords) v.push_back(c.get_num());
  return v;
}

IntMatrix apply(const IntMatrix& m, const IntMatrix& b) { return m * b; }

bool divisible_by(const FieldElement& x, const mpz_class& p) {
  for (const auto& c : x.coords)
    if (c.get_den() != 1 || c.get_num() % p != 0) return false;
  return true;
}

FieldElement divide_exact(FieldElement x, const mpz_class& p) {
  for (auto& c : x.coords) c /= p;
  return x;
}

unsigned small_valuation(const mpz_class& n, const mpz_class& p) { return n == 0 ? 0 : valuation(abs(n), p); }

}  // namespace

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b) {
  return a.p == b.p && a.generator_poly == b.generator_poly;
}

bool prime_less(const PrimeIdeal& a, const PrimeIdeal& b) {
  if (a.p != b.p) return a.p < b.p;
  if (a.f != b.f) return a.f < b.f;
  return std::lexicographical_compare(a.generator_poly.rbegin(), a.generator_poly.rend(), b.generator_poly.rbegin(),
                                      b.generator_poly.rend());
}

std::string prime_label(const PrimeIdeal& P) {
  return "(" + P.p.get_str() + ", " + poly::to_string(P.generator_poly, "t") + ")";
}

FractionalIdeal make_ideal(const NumberField& field, const IntMatrix& generators, const mpz_class& denominator) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  if (generators.rows() != n) fail(ErrorKind::kInvalidInput, "ideal basis must have n rows");
  if (denominator == 0) fail(ErrorKind::kInvalidInput, "ideal denominator must be nonzero");
  IntMatrix h = hnf_span(generators);
  if (h.cols() != n) fail(ErrorKind::kInvalidInput, "ideal generators do not span a full-rank lattice");
  FractionalIdeal I = normalize(std::move(h), denominator);
  if (!ideal_is_closed(field, I)) fail(ErrorKind::kInvalidInput, "lattice is not an ideal: not closed under multiplication");
  return I;
}

FractionalIdeal unit_ideal(const NumberField& field) {
  return FractionalIdeal{1, int_identity(static_cast<std::size_t>(field.degree))};
}

FractionalIdeal principal_ideal(const NumberField& field, const FieldElement& x) {
  if (elem_is_zero(x)) fail(ErrorKind::kInvalidInput, "principal_ideal: zero element");
  const mpz_class d = elem_denominator(x);
  FieldElement y = x;
  for (auto& c : y.coords) c *= d;
  return normalize(hnf(elem_mult_matrix(field, y)).hnf, d);
}

FractionalIdeal scalar_ideal(const NumberField& field, const mpq_class& q) {
  return principal_ideal(field, elem_from_rational(field, q));
}

mpq_class ideal_norm(const FractionalIdeal& I) {
  mpz_class dn;
  mpz_pow_ui(dn.get_mpz_t(), I.denominator.get_mpz_t(), I.basis.rows());
  mpq_class r(diagonal_product(I.basis), dn);
  r.canonicalize();
  return r;
}

bool ideal_is_integral(const FractionalIdeal& I) { return I.denominator == 1; }

bool ideal_is_closed(const NumberField& field, const FractionalIdeal& I) {
  for (const auto& m : field.mult_table) {
    IntMatrix prod = apply(m, I.basis);
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (!solve_in_lattice(I.basis, prod.col(j))) return false;
  }
  return true;
}

bool ideal_contains(const NumberField& field, const FractionalIdeal& I, const FieldElement& x) {
  (void)field;
  FieldElement y = x;
  for (auto& c : y.coords) c *= I.denominator;
  if (!elem_is_integral(y)) return false;
  return solve_in_lattice(I.basis, int_coords(y));
}

std::vector<FieldElement> ideal_generators(const NumberField& field, const FractionalIdeal& I) {
  (void)field;
  std::vector<FieldElement> out;
  for (std::size_t j = 0; j < I.basis.cols(); ++j) out.push_back(column_element(I.basis, j));
  return out;
}

FractionalIdeal ideal_mul(const NumberField& field, const FractionalIdeal& I, const FractionalIdeal& J) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  IntMatrix gens(n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix block = apply(elem_mult_matrix(field, column_element(I.basis, i)), J.basis);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) gens(r, i * n + c) = block(r, c);
  }
  const mpz_class modulus = diagonal_product(I.basis) * diagonal_product(J.basis);
  return normalize(hnf_modular(gens, modulus), I.denominator * J.denominator);
}

FractionalIdeal ideal_inv(const NumberField& field, const FractionalIdeal& I) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  const mpz_class norm = diagonal_product(I.basis);
  if (norm == 0) fail(ErrorKind::kMath, "ideal_inv: zero ideal");
  // A^-1 = (1/N) {c in O : c * a_i in N O for every basis element a_i}.
  IntMatrix k(n * n, n + n * n);
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix m = elem_mult_matrix(field, column_element(I.basis, i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) k(i * n + r, c) = m(r, c);
  }
  for (std::size_t r = 0; r < n * n; ++r) k(r, n + r) = norm;
  IntMatrix ker = kernel_basis(k);
  IntMatrix gens(n, ker.cols());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < ker.cols(); ++c) gens(r, c) = ker(r, c) * I.denominator;
  IntMatrix h = hnf_modular(gens, norm * I.denominator);
  if (h.cols() != n) fail(ErrorKind::kMath, "ideal_inv: kernel lattice is not full rank");
  return normalize(std::move(h), norm);
}

FractionalIdeal ideal_pow(const NumberField& field, const FractionalIdeal& I, long k) {
  FractionalIdeal base = k < 0 ? ideal_inv(field, I) : I;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  FractionalIdeal result = unit_ideal(field);
  while (e) {
    if (e & 1) result = ideal_mul(field, result, base);
    e >>= 1;
    if (e) base = ideal_mul(field, base, base);
  }
  return result;
}

std::vector<PrimeIdeal> primes_above(const NumberField& field, const mpz_class& p) {
  if (p < 2 || !is_prime(p)) fail(ErrorKind::kInvalidInput, "primes_above: " + p.get_str() + " is not prime");
  if (field.index % p == 0)
    fail(ErrorKind::kUnsupported, "index divisor, unsupported prime: " + p.get_str() + " divides [O : Z[t]]");
  std::vector<PrimeIdeal> out;
  for (const auto& fac : poly::factor_mod(field.defining_poly, p)) {
    PrimeIdeal P;
    P.p = p;
    P.f = poly::degree(fac.factor);
    P.e = static_cast<int>(fac.multiplicity);
    P.generator_poly = fac.factor;
    mpz_pow_ui(P.norm.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(P.f));
    FieldElement g = elem_from_power_basis(field, poly::to_q(fac.factor));
    P.ideal = normalize(hnf_modular(elem_mult_matrix(field, g), p), 1);
    if (diagonal_product(P.ideal.basis) != P.norm) fail(ErrorKind::kMath, "primes_above: norm mismatch for " + prime_label(P));

    FractionalIdeal inv = ideal_inv(field, P.ideal);
    bool found = false;
    for (std::size_t j = 0; j < inv.basis.cols() && !found; ++j) {
      FieldElement c = column_element(inv.basis, j);
      for (auto& v : c.coords) v = v * p / inv.denominator;
      if (!elem_is_integral(c)) fail(ErrorKind::kMath, "primes_above: p * P^-1 is not integral");
      if (!divisible_by(c, p)) {
        P.anti_uniformizer = c;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::kMath, "primes_above: no anti-uniformizer for " + prime_label(P));
    out.push_back(std::move(P));
  }
  std::sort(out.begin(), out.end(), prime_less);
  int total = 0;
  for (const auto& P : out) total += P.e * P.f;
  if (total != field.degree) fail(ErrorKind::kMath, "primes_above: sum e*f differs from the degree");
  return out;
}

long valuation(const NumberField& field, const FieldElement& x, const PrimeIdeal& P) {
  if (elem_is_zero(x)) fail(ErrorKind::kInvalidInput, "valuation of zero");
  const mpz_class d = elem_denominator(x);
  FieldElement y = x;
  for (auto& c : y.coords) c *= d;
  long k = 0;
  for (;;) {
    FieldElement z = elem_mul(field, y, P.anti_uniformizer);
    if (!divisible_by(z, P.p)) break;
    y = divide_exact(std::move(z), P.p);
    ++k;
  }
  return k - static_cast<long>(P.e) * static_cast<long>(small_valuation(d, P.p));
}

long valuation(const NumberField& field, const FractionalIdeal& I, const PrimeIdeal& P) {
  long best = 0;
  bool first = true;
  for (std::size_t j = 0; j < I.basis.cols(); ++j) {
    FieldElement c = column_element(I.basis, j);
    if (elem_is_zero(c)) continue;
    long v = valuation(field, c, P);
    if (first || v < best) best = v;
    first = false;
  }
  return best - static_cast<long>(P.e) * static_cast<long>(small_valuation(I.denominator, P.p));
}

Factorization factor_ideal(const NumberField& field, const FractionalIdeal& I, std::uint64_t effort) {
  // Step 1: N = N(dI).
  const FractionalIdeal dI{1, I.basis};
  const mpz_class norm_di = diagonal_product(I.basis);
  // Step 2: factor N.
  const auto rational_primes = factor_integer_grouped(norm_di, effort);
  // Step 3-4: primes above each p and their exponents in dI.
  std::vector<std::pair<PrimeIdeal, long>> num;
  for (const auto& [p, unused] : rational_primes)
    for (auto& P : primes_above(field, p)) {
      long v = valuation(field, dI, P);
      if (v != 0) num.emplace_back(std::move(P), v);
    }
  // Step 5: the same for dO, whose norm is d^n.
  std::vector<std::pair<PrimeIdeal, long>> den;
  for (const auto& [p, k] : factor_integer_grouped(I.denominator, effort))
    for (auto& P : primes_above(field, p)) {
      const long v = static_cast<long>(P.e) * static_cast<long>(k);
      den.emplace_back(std::move(P), v);
    }
  // Step 6: subtract.
  for (auto& [P, v] : den) {
    auto it = std::find_if(num.begin(), num.end(), [&](const auto& q) { return same_prime(q.first, P); });
    if (it != num.end())
      it->second -= v;
    else
      num.emplace_back(std::move(P), -v);
  }
  Factorization out;
  for (auto& f : num)
    if (f.second != 0) out.factors.push_back(std::move(f));
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return prime_less(a.first, b.first); });
  return out;
}

FractionalIdeal reassemble(const NumberField& field, const Factorization& fac) {
  FractionalIdeal r = unit_ideal(field);
  for (const auto& [P, k] : fac.factors) r = ideal_mul(field, r, ideal_pow(field, P.ideal, k));
  return r;
}

FractionalIdeal s_ideal(const NumberField& field, const std::vector<PrimeIdeal>& S, const std::vector<long>& v) {
  if (S.size() != v.size()) fail(ErrorKind::kInvalidInput, "valuation vector length differs from |S|");
  FractionalIdeal r = unit_ideal(field);
  for (std::size_t j = 0; j < S.size(); ++j)
    if (v[j] != 0) r = ideal_mul(field, r, ideal_pow(field, S[j].ideal, -v[j]));
  return r;
}

SUnitCheck is_s_unit(const NumberField& field, const FieldElement& x, const std::vector<PrimeIdeal>& S,
                     std::uint64_t effort) {
  if (elem_is_zero(x)) fail(ErrorKind::kInvalidInput, "is_s_unit: zero element");
  const FractionalIdeal ax = principal_ideal(field, x);
  Factorization fac = factor_ideal(field, ax, effort);
  SUnitCheck out;
  out.exponents.assign(S.size(), 0);
  for (const auto& [P, k] : fac.factors) {
    auto it = std::find_if(S.begin(), S.end(), [&](const PrimeIdeal& q) { return same_prime(q, P); });
    if (it == S.end()) return SUnitCheck{};
    out.exponents[static_cast<std::size_t>(it - S.begin())] = k;
  }
  if (!(ideal_mul(field, ax, s_ideal(field, S, out.exponents)) == unit_ideal(field)))
    fail(ErrorKind::kVerification, "is_s_unit: (x) * prod P^-v is not the unit ideal");
  out.is_s_unit = true;
  return out;
}

FractionalIdeal ideal_from_json(const NumberField& field, const nlohmann::json& doc) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  if (!doc.is_object()) fail(ErrorKind::kInvalidInput, "ideal spec: expected an object");
  if (doc.contains("element")) {
    auto coords = json_rational_vector(doc["element"], "ideal spec: element");
    if (coords.size() != n) fail(ErrorKind::kInvalidInput, "ideal spec: element must have n coordinates");
    return principal_ideal(field, FieldElement{coords});
  }
  if (doc.contains("hnf")) {
    const auto& h = doc["hnf"];
    if (!h.is_array() || h.size() != n) fail(ErrorKind::kInvalidInput, "ideal spec: \"hnf\" must have n rows");
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!h[i].is_array() || h[i].size() != n) fail(ErrorKind::kInvalidInput, "ideal spec: \"hnf\" rows must have n entries");
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = json_integer(h[i][j], "ideal spec: hnf[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    mpz_class d = doc.contains("denominator") ? json_integer(doc["denominator"], "ideal spec: denominator") : mpz_class(1);
    if (d <= 0) fail(ErrorKind::kInvalidInput, "ideal spec: denominator must be positive");
    return make_ideal(field, m, d);
  }
  fail(ErrorKind::kInvalidInput, "ideal spec: expected \"element\" or \"hnf\"");
}

}  // namespace nfq
