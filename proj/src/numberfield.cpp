#include "nfq/numberfield.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <set>

#include "json.hpp"
#include "nfq/arith.hpp"
#include "nfq/error.hpp"
#include "nfq/spec_io.hpp"

namespace nfq {

using poly::QPoly;
using poly::ZPoly;

std::pair<int, int> signature(const ZPoly& f) {
  const int n = poly::degree(f);
  if (n < 1) fail(ErrorKind::kInvalidInput, "signature: constant polynomial");
  if (!poly::is_squarefree(f)) fail(ErrorKind::kInvalidInput, "signature: polynomial is not square-free");
  const int n1 = static_cast<int>(poly::count_real_roots(f));
  return {n1, (n - n1) / 2};
}

mpz_class poly_discriminant(const ZPoly& f) { return poly::discriminant(f); }

namespace {

mpz_class basis_index(const RatMatrix& basis) {
  mpq_class d = det(basis);
  if (d == 0) fail(ErrorKind::kInvalidInput, "integral basis is singular");
  mpq_class idx = 1 / abs(d);
  if (idx.get_den() != 1) fail(ErrorKind::kInvalidInput, "integral basis: 1/|det| is not an integer");
  return idx.get_num();
}

std::vector<mpz_class> integer_divisors(const mpz_class& n) {
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factor_integer_grouped(abs(n))) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

mpz_class field_discriminant(const ZPoly& f, const RatMatrix& integral_basis) {
  mpz_class idx = basis_index(integral_basis);
  mpz_class pd = poly::discriminant(f);
  mpz_class sq = idx * idx;
  if (pd % sq != 0) fail(ErrorKind::kInvalidInput, "inconsistent basis: poly_disc / index^2 is not an integer");
  return pd / sq;
}

bool certify_irreducible(const ZPoly& f) {
  const int n = poly::degree(f);
  if (n < 1) return false;
  if (f[0] == 0) return false;
  for (const auto& d : integer_divisors(f[0]))
    for (const mpz_class& r : {mpz_class(d), mpz_class(-d)})
      if (poly::eval(f, r) == 0) return false;
  if (n <= 3) return true;

  // Candidate degrees of a proper factor; 1 and n-1 are excluded by the
  // rational root test.
  std::set<int> candidates;
  for (int k = 2; k <= n - 2; ++k) candidates.insert(k);
  const mpz_class disc = poly::discriminant(f);
  int good_primes = 0;
  for (std::uint64_t p : primes_up_to(1000)) {
    if (good_primes == 5 || candidates.empty()) break;
    if (disc % static_cast<unsigned long>(p) == 0) continue;
    ++good_primes;
    std::set<int> sums{0};
    for (const auto& fac : poly::factor_mod(f, mpz_class(static_cast<unsigned long>(p)))) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + poly::degree(fac.factor));
      sums = std::move(next);
    }
    std::set<int> kept;
    for (int k : candidates)
      if (sums.count(k)) kept.insert(k);
    candidates = std::move(kept);
  }
  return candidates.empty();
}

NumberField make_field(const ZPoly& f_in, const std::optional<RatMatrix>& integral_basis, unsigned precision_bits,
                       std::string name) {
  ZPoly f = f_in;
  poly::trim(f);
  const int n = poly::degree(f);
  if (n < 2) fail(ErrorKind::kInvalidInput, "defining polynomial must have degree >= 2");
  if (f.back() != 1) fail(ErrorKind::kInvalidInput, "defining polynomial must be monic");
  if (precision_bits < Real::kMinPrecision) fail(ErrorKind::kInvalidInput, "precision_bits must be >= 64");
  if (!poly::is_squarefree(f)) fail(ErrorKind::kInvalidInput, "defining polynomial is not square-free");
  if (!certify_irreducible(f))
    fail(ErrorKind::kInvalidInput, "defining polynomial " + poly::to_string(f) + " is reducible or could not be certified irreducible");

  NumberField k;
  k.name = std::move(name);
  k.defining_poly = f;
  k.degree = n;
  std::tie(k.real_places, k.complex_places) = signature(f);
  k.unit_rank = k.real_places + k.complex_places - 1;
  k.precision_bits = precision_bits;
  k.poly_disc = poly::discriminant(f);

  const std::size_t nn = static_cast<std::size_t>(n);
  if (integral_basis) {
    const RatMatrix& b = *integral_basis;
    if (b.rows() != nn || b.cols() != nn) fail(ErrorKind::kInvalidInput, "integral basis must be n x n");
    if (b(0, 0) != 1) fail(ErrorKind::kInvalidInput, "integral basis must start with 1");
    for (std::size_t j = 1; j < nn; ++j)
      if (b(0, j) != 0) fail(ErrorKind::kInvalidInput, "integral basis must start with 1");
    k.integral_basis = b;
    k.maximal_order_assumed = false;
  } else {
    k.integral_basis = RatMatrix::identity(nn, mpq_class(0), mpq_class(1));
    k.maximal_order_assumed = true;
  }
  k.index = basis_index(k.integral_basis);
  k.field_disc = field_discriminant(f, k.integral_basis);
  k.integral_basis_inverse = inverse(k.integral_basis);
  for (const auto& v : k.integral_basis_inverse.data())
    if (v.get_den() != 1) fail(ErrorKind::kInvalidInput, "inconsistent basis: Z[t] is not contained in its span");

  // Multiplication table; integrality certifies that the basis spans an order.
  const QPoly fq = poly::to_q(f);
  k.mult_table.assign(nn, IntMatrix(nn, nn));
  for (std::size_t i = 0; i < nn; ++i) {
    QPoly wi = k.integral_basis.row(i);
    poly::trim(wi);
    for (std::size_t j = 0; j < nn; ++j) {
      QPoly wj = k.integral_basis.row(j);
      poly::trim(wj);
      FieldElement prod = elem_from_power_basis(k, poly::rem(poly::mul(wi, wj), fq));
      for (std::size_t r = 0; r < nn; ++r) {
        if (prod.coords[r].get_den() != 1) fail(ErrorKind::kInvalidInput, "inconsistent basis: not closed under multiplication");
        k.mult_table[i](r, j) = prod.coords[r].get_num();
      }
    }
  }
  return k;
}

NumberField parse_field(const std::string& json_text) { return field_from_json(parse_json_document(json_text)); }

// ---------------------------------------------------------------------------

FieldElement elem_from_integer(const NumberField& field, const mpz_class& value) {
  return elem_from_rational(field, mpq_class(value));
}

FieldElement elem_from_rational(const NumberField& field, const mpq_class& value) {
  FieldElement x{std::vector<mpq_class>(static_cast<std::size_t>(field.degree))};
  x.coords[0] = value;  // omega_1 = 1
  return x;
}

FieldElement elem_from_power_basis(const NumberField& field, const QPoly& power_coords) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  if (power_coords.size() > n) return elem_from_power_basis(field, poly::rem(power_coords, poly::to_q(field.defining_poly)));
  FieldElement x{std::vector<mpq_class>(n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < power_coords.size(); ++i) x.coords[j] += power_coords[i] * field.integral_basis_inverse(i, j);
  return x;
}

QPoly elem_to_power_basis(const NumberField& field, const FieldElement& x) {
  const std::size_t n = static_cast<std::size_t>(field.degree);
  if (x.coords.size() != n) fail(ErrorKind::kInvalidInput, "element has the wrong number of coordinates");
  QPoly p(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p[j] += x.coords[i] * field.integral_basis(i, j);
  poly::trim(p);
  return p;
}

FieldElement elem_generator(const NumberField& field) {
  return elem_from_power_basis(field, QPoly{mpq_class(0), mpq_class(1)});
}

bool elem_is_zero(const FieldElement& x) {
  return std::all_of(x.coords.begin(), x.coords.end(), [](const mpq_class& c) { return c == 0; });
}

bool elem_is_integral(const FieldElement& x) {
  return std::all_of(x.coords.begin(), x.coords.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

mpz_class elem_denominator(const FieldElement& x) {
  mpz_class d = 1;
  for (const auto& c : x.coords) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

FieldElement elem_add(const FieldElement& x, const FieldElement& y) {
  if (x.coords.size() != y.coords.size()) fail(ErrorKind::kInvalidInput, "element size mismatch");
  FieldElement z = x;
  for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] += y.coords[i];
  return z;
}

FieldElement elem_sub(const FieldElement& x, const FieldElement& y) {
  if (x.coords.size() != y.coords.size()) fail(ErrorKind::kInvalidInput, "element size mismatch");
  FieldElement z = x;
  for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] -= y.coords[i];
  return z;
}

FieldElement elem_mul(const NumberField& field, const FieldElement& x, const FieldElement& y) {
  QPoly prod = poly::mul(elem_to_power_basis(field, x), elem_to_power_basis(field, y));
  return elem_from_power_basis(field, poly::rem(prod, poly::to_q(field.defining_poly)));
}

FieldElement elem_inv(const NumberField& field, const FieldElement& x) {
  if (elem_is_zero(x)) fail(ErrorKind::kMath, "elem_inv: division by zero");
  auto g = poly::xgcd(elem_to_power_basis(field, x), poly::to_q(field.defining_poly));
  if (poly::degree(g.g) != 0) fail(ErrorKind::kMath, "elem_inv: element is a zero divisor");
  return elem_from_power_basis(field, poly::rem(g.s, poly::to_q(field.defining_poly)));
}

FieldElement elem_pow(const NumberField& field, const FieldElement& x, long e) {
  FieldElement base = e < 0 ? elem_inv(field, x) : x;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  FieldElement result = elem_from_integer(field, 1);
  while (k) {
    if (k & 1) result = elem_mul(field, result, base);
    k >>= 1;
    if (k) base = elem_mul(field, base, base);
  }
  return result;
}

mpq_class elem_norm(const NumberField& field, const FieldElement& x) {
  if (elem_is_zero(x)) return 0;
  QPoly q = elem_to_power_basis(field, x);
  mpz_class den = 1;
  for (const auto& c : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly h(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    mpq_class v = q[i] * den;
    h[i] = v.get_num();
  }
  mpz_class denn;
  mpz_pow_ui(denn.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(field.degree));
  mpq_class r(poly::resultant(field.defining_poly, h), denn);
  r.canonicalize();
  return r;
}

IntMatrix elem_mult_matrix(const NumberField& field, const FieldElement& x) {
  if (!elem_is_integral(x)) fail(ErrorKind::kInvalidInput, "elem_mult_matrix: element is not integral");
  const std::size_t n = static_cast<std::size_t>(field.degree);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.coords[i] == 0) continue;
    const mpz_class c = x.coords[i].get_num();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) m(r, s) += c * field.mult_table[i](r, s);
  }
  return m;
}

std::string elem_to_string(const FieldElement& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) s += ", ";
    s += x.coords[i].get_str();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
  Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real abs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }

namespace {

Complex eval_complex(const ZPoly& f, const Complex& z, unsigned prec) {
  Complex acc{Real(prec), Real(prec)};
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * z;
    acc.re += Real(*it, prec);
  }
  return acc;
}

Complex eval_complex(const QPoly& f, const Complex& z, unsigned prec) {
  Complex acc{Real(prec), Real(prec)};
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * z;
    acc.re += Real(*it, prec);
  }
  return acc;
}

Complex newton_polish(const ZPoly& f, Complex z, bool real_root, unsigned prec) {
  const ZPoly df = poly::derivative(f);
  const Real tol = two_pow_neg(prec - 8, prec);
  for (int it = 0; it < 200; ++it) {
    Complex step = eval_complex(f, z, prec) / eval_complex(df, z, prec);
    if (real_root) step.im = Real(prec);
    z = z - step;
    Real scale = max(Real(1L, prec), abs(z));
    if (abs(step) <= tol * scale) return z;
  }
  fail(ErrorKind::kMath, "root finder did not converge at " + std::to_string(prec) + " bits");
}

}  // namespace

EmbeddingData embeddings(const NumberField& field, unsigned prec) {
  if (prec < Real::kMinPrecision) fail(ErrorKind::kInvalidInput, "precision_bits must be >= 64");
  const ZPoly& f = field.defining_poly;
  const int n = field.degree;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -f[static_cast<std::size_t>(i)].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::kMath, "companion eigensolve failed");
  std::vector<std::complex<double>> approx;
  for (int i = 0; i < n; ++i) approx.push_back(solver.eigenvalues()(i));
  std::sort(approx.begin(), approx.end(),
            [](const auto& a, const auto& b) { return std::abs(a.imag()) < std::abs(b.imag()); });

  EmbeddingData emb;
  emb.precision_bits = prec;
  for (int i = 0; i < field.real_places; ++i) {
    Complex z{Real(approx[static_cast<std::size_t>(i)].real(), prec), Real(prec)};
    emb.real_roots.push_back(newton_polish(f, z, true, prec).re);
  }
  for (std::size_t i = static_cast<std::size_t>(field.real_places); i < approx.size(); ++i) {
    if (approx[i].imag() <= 0) continue;
    Complex z{Real(approx[i].real(), prec), Real(approx[i].imag(), prec)};
    emb.complex_roots.push_back(newton_polish(f, z, false, prec));
  }
  if (static_cast<int>(emb.complex_roots.size()) != field.complex_places)
    fail(ErrorKind::kMath, "root finder could not separate the complex conjugate pairs");
  std::sort(emb.real_roots.begin(), emb.real_roots.end());
  std::sort(emb.complex_roots.begin(), emb.complex_roots.end(), [](const Complex& a, const Complex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  const Real sep = two_pow_neg(prec / 2, prec);
  for (std::size_t i = 1; i < emb.real_roots.size(); ++i)
    if (abs(emb.real_roots[i] - emb.real_roots[i - 1]) < sep) fail(ErrorKind::kMath, "root finder returned a repeated real root");
  for (std::size_t i = 1; i < emb.complex_roots.size(); ++i)
    if (abs(emb.complex_roots[i] - emb.complex_roots[i - 1]) < sep)
      fail(ErrorKind::kMath, "root finder returned a repeated complex root");

  const std::size_t nn = static_cast<std::size_t>(n);
  emb.minkowski = real_zero(nn, nn, prec);
  const Real root2 = sqrt(Real(2L, prec));
  for (std::size_t j = 0; j < nn; ++j) {
    QPoly w = field.integral_basis.row(j);
    poly::trim(w);
    std::size_t col = 0;
    for (const auto& r : emb.real_roots) emb.minkowski(j, col++) = eval_complex(w, Complex{r, Real(prec)}, prec).re;
    for (const auto& z : emb.complex_roots) {
      Complex v = eval_complex(w, z, prec);
      emb.minkowski(j, col++) = root2 * v.re;
      emb.minkowski(j, col++) = root2 * v.im;
    }
  }
  const Real expected = sqrt(Real(mpz_class(abs(field.field_disc)), prec));
  const Real rel = abs(abs(det(emb.minkowski)) - expected) / expected;
  if (rel > two_pow_neg(prec / 4, prec)) fail(ErrorKind::kMath, "Minkowski determinant does not match sqrt(|disc|)");
  return emb;
}

std::vector<Complex> embed(const NumberField& field, const EmbeddingData& emb, const FieldElement& x) {
  const unsigned prec = emb.precision_bits;
  QPoly q = elem_to_power_basis(field, x);
  std::vector<Complex> out;
  for (const auto& r : emb.real_roots) out.push_back(eval_complex(q, Complex{r, Real(prec)}, prec));
  for (const auto& z : emb.complex_roots) out.push_back(eval_complex(q, z, prec));
  return out;
}

// ---------------------------------------------------------------------------

GroupPoint zero_point(const NumberField& field, std::size_t s_size, unsigned prec) {
  GroupPoint p;
  p.u.assign(static_cast<std::size_t>(field.unit_rank), Real(prec));
  p.mu.assign(static_cast<std::size_t>(field.real_places), 0);
  p.theta.assign(static_cast<std::size_t>(field.complex_places), Real(prec));
  p.valuations.assign(s_size, 0);
  return p;
}

Real wrap_unit_interval(const Real& t) {
  Real r = t - Real(t.floor_to_integer(), t.precision());
  if (r >= Real(1L, t.precision())) r -= Real(1L, t.precision());
  return r;
}

GroupPoint add_points(const GroupPoint& a, const GroupPoint& b) {
  if (a.u.size() != b.u.size() || a.mu.size() != b.mu.size() || a.theta.size() != b.theta.size() ||
      a.valuations.size() != b.valuations.size())
    fail(ErrorKind::kInvalidInput, "group points of different shapes");
  GroupPoint c = a;
  for (std::size_t i = 0; i < c.u.size(); ++i) c.u[i] += b.u[i];
  for (std::size_t i = 0; i < c.mu.size(); ++i) c.mu[i] ^= b.mu[i];
  for (std::size_t i = 0; i < c.theta.size(); ++i) c.theta[i] = wrap_unit_interval(c.theta[i] + b.theta[i]);
  for (std::size_t i = 0; i < c.valuations.size(); ++i) c.valuations[i] += b.valuations[i];
  return c;
}

GroupPoint negate_point(const GroupPoint& a) {
  GroupPoint c = a;
  for (auto& v : c.u) v = -v;
  for (auto& t : c.theta) t = wrap_unit_interval(-t);
  for (auto& v : c.valuations) v = -v;
  return c;
}

std::vector<Real> complete_log_vector(const NumberField& field, const std::vector<Real>& u, const Real& target) {
  if (static_cast<int>(u.size()) != field.unit_rank) fail(ErrorKind::kInvalidInput, "log vector must have length n1 + n2 - 1");
  auto weight = [&](int place) { return place < field.real_places ? 1L : 2L; };
  std::vector<Real> full = u;
  Real acc = target;
  for (int j = 0; j < field.unit_rank; ++j) acc -= u[static_cast<std::size_t>(j)] * weight(j);
  full.push_back(acc / weight(field.places() - 1));
  return full;
}

std::vector<Complex> phi_map(const NumberField& field, const GroupPoint& point, const EmbeddingData& emb,
                             const std::optional<Real>& log_norm_target) {
  const unsigned prec = emb.precision_bits;
  if (static_cast<int>(point.mu.size()) != field.real_places || static_cast<int>(point.theta.size()) != field.complex_places)
    fail(ErrorKind::kInvalidInput, "group point does not match the field signature");
  std::vector<Real> u = complete_log_vector(field, point.u, log_norm_target.value_or(Real(prec)));
  const Real two_pi = pi(prec) * 2L;
  std::vector<Complex> out;
  for (int j = 0; j < field.places(); ++j) {
    Real mag = exp(u[static_cast<std::size_t>(j)].with_precision(prec));
    if (j < field.real_places) {
      out.push_back({point.mu[static_cast<std::size_t>(j)] ? -mag : mag, Real(prec)});
    } else {
      Real angle = two_pi * point.theta[static_cast<std::size_t>(j - field.real_places)].with_precision(prec);
      out.push_back({mag * cos(angle), mag * sin(angle)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

QuadraticUnit fundamental_unit_real_quadratic(const mpz_class& d) {
  if (d <= 1) fail(ErrorKind::kInvalidInput, "fundamental_unit_real_quadratic: d must exceed 1");
  for (const auto& [p, e] : factor_integer_grouped(d))
    if (e > 1) fail(ErrorKind::kInvalidInput, "fundamental_unit_real_quadratic: d is not square-free");
  const bool one_mod_four = d % 4 == 1;
  // omega = (P + sqrt(d)) / Q with Q | d - P^2.
  mpz_class big_p = one_mod_four ? 1 : 0, big_q = one_mod_four ? 2 : 1;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
  // Norm of p - q*omega: p^2 - p*q*tr + q^2*N(omega).
  const mpz_class tr = one_mod_four ? 1 : 0;
  const mpz_class nm = one_mod_four ? mpz_class((1 - d) / 4) : mpz_class(-d);
  mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (int k = 0; k < 100000; ++k) {
    mpz_class a;
    mpz_class num = big_p + root;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), big_q.get_mpz_t());
    mpz_class p = a * p_prev + p_prev2, q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    mpz_class norm = p * p - p * q * tr + q * q * nm;
    if (norm == 1 || norm == -1) {
      // p - q*omega = (x + y*sqrt(d)) / 2 up to sign and conjugation.
      mpz_class x = one_mod_four ? mpz_class(2 * p - q) : mpz_class(2 * p);
      mpz_class y = one_mod_four ? mpz_class(q) : mpz_class(2 * q);
      return QuadraticUnit{d, abs(x), abs(y), norm == 1 ? 1 : -1};
    }
    big_p = a * big_q - big_p;
    big_q = (d - big_p * big_p) / big_q;
  }
  fail(ErrorKind::kEffort, "fundamental_unit_real_quadratic: continued fraction did not close");
}

mpz_class quadratic_radicand(const NumberField& field) {
  if (field.degree != 2) fail(ErrorKind::kInvalidInput, "field is not quadratic");
  const mpz_class& disc = field.field_disc;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), disc.get_mpz_t(), 4);
  return r == 1 ? disc : mpz_class(disc / 4);
}

FieldElement quadratic_unit_element(const NumberField& field, const QuadraticUnit& unit) {
  if (field.degree != 2) fail(ErrorKind::kInvalidInput, "field is not quadratic");
  const mpz_class& a0 = field.defining_poly[0];
  const mpz_class& a1 = field.defining_poly[1];
  mpz_class big_d = a1 * a1 - 4 * a0;
  if (big_d % unit.d != 0) fail(ErrorKind::kInvalidInput, "unit does not belong to this field");
  mpz_class k2 = big_d / unit.d, k;
  if (k2 <= 0 || !mpz_perfect_square_p(k2.get_mpz_t())) fail(ErrorKind::kInvalidInput, "unit does not belong to this field");
  mpz_sqrt(k.get_mpz_t(), k2.get_mpz_t());
  // sqrt(d) = (2t + a1) / k.
  mpq_class c0 = mpq_class(unit.x, 2) + mpq_class(unit.y * a1, 2 * k);
  mpq_class c1 = mpq_class(unit.y, k);
  c0.canonicalize();
  c1.canonicalize();
  return elem_from_power_basis(field, QPoly{c0, c1});
}

}  // namespace nfq
