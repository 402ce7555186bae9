#include "nfq/exact_linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

#include "nfq/error.hpp"

namespace nfq {

IntMatrix int_identity(std::size_t n) { return IntMatrix::identity(n, mpz_class(0), mpz_class(1)); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

// Column operation helpers; `u` may be null when no transform is tracked.
void col_addmul(IntMatrix& a, IntMatrix* u, std::size_t dst, std::size_t src, const mpz_class& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += q * a(i, src);
  if (u)
    for (std::size_t i = 0; i < u->rows(); ++i) (*u)(i, dst) += q * (*u)(i, src);
}

void col_negate(IntMatrix& a, IntMatrix* u, std::size_t c) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, c) = -a(i, c);
  if (u)
    for (std::size_t i = 0; i < u->rows(); ++i) (*u)(i, c) = -(*u)(i, c);
}

void col_swap(IntMatrix& a, IntMatrix* u, std::size_t x, std::size_t y) {
  a.swap_cols(x, y);
  if (u) u->swap_cols(x, y);
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// In-place column echelon reduction. Returns the rank; columns [0, rank)
// hold the reduced basis, the remaining columns are zero.
std::size_t column_echelon(IntMatrix& a, IntMatrix* u) {
  const std::size_t k = a.cols();
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.rows() && c < k; ++i) {
    for (;;) {
      // Smallest nonzero entry of row i among the free columns becomes pivot.
      std::size_t best = k;
      for (std::size_t j = c; j < k; ++j) {
        if (a(i, j) != 0 && (best == k || abs(a(i, j)) < abs(a(i, best)))) best = j;
      }
      if (best == k) break;
      col_swap(a, u, c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < k; ++j) {
        if (a(i, j) == 0) continue;
        mpz_class q = floor_div(a(i, j), a(i, c));
        col_addmul(a, u, j, c, -q);
        if (a(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (a(i, c) == 0) continue;
    if (a(i, c) < 0) col_negate(a, u, c);
    for (std::size_t j = 0; j < c; ++j) {
      mpz_class q = floor_div(a(i, j), a(i, c));
      col_addmul(a, u, j, c, -q);
    }
    ++c;
  }
  return c;
}

IntMatrix leading_columns(const IntMatrix& a, std::size_t count) {
  IntMatrix out(a.rows(), count);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = a(i, j);
  return out;
}

}  // namespace

HNFResult hnf(const IntMatrix& m) {
  HNFResult r{m, int_identity(m.cols())};
  std::size_t rk = column_echelon(r.hnf, &r.transform);
  if (rk != m.cols()) fail(ErrorKind::kMath, "hnf: input does not have full column rank");
  return r;
}

IntMatrix hnf_span(const IntMatrix& generators) {
  IntMatrix a = generators;
  std::size_t rk = column_echelon(a, nullptr);
  return leading_columns(a, rk);
}

IntMatrix hnf_modular(const IntMatrix& generators, const mpz_class& modulus) {
  if (modulus <= 0) fail(ErrorKind::kInvalidInput, "hnf_modular: modulus must be positive");
  const std::size_t n = generators.rows();
  IntMatrix a(n, generators.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < generators.cols(); ++j) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), generators(i, j).get_mpz_t(), modulus.get_mpz_t());
      a(i, j) = r;
    }
    a(i, generators.cols() + i) = modulus;
  }
  std::size_t rk = column_echelon(a, nullptr);
  return leading_columns(a, rk);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = int_identity(m.cols());
  const std::size_t rk = column_echelon(a, &u);
  IntMatrix out(m.cols(), m.cols() - rk);
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = rk; j < m.cols(); ++j) out(i, j - rk) = u(i, j);
  return out;
}

SNFResult snf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  bool any = false;
  for (const auto& v : m.data()) any = any || v != 0;
  if (!any) fail(ErrorKind::kInvalidInput, "snf: zero matrix");

  IntMatrix a = m;
  IntMatrix left = int_identity(rows), right = int_identity(cols);
  auto row_addmul = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j = 0; j < cols; ++j) a(dst, j) += q * a(src, j);
    for (std::size_t j = 0; j < rows; ++j) left(dst, j) += q * left(src, j);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) { col_addmul(a, &right, dst, src, q); };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Pivot: smallest nonzero entry in the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
      if (pi == rows) break;
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      col_swap(a, &right, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_addmul(i, t, -floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, -floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_addmul(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) left(t, j) = -left(t, j);
    }
  }

  // Reverse the diagonal into descending divisibility order.
  for (std::size_t t = 0; t < diag / 2; ++t) {
    std::size_t s = diag - 1 - t;
    a.swap_rows(t, s);
    left.swap_rows(t, s);
    col_swap(a, &right, t, s);
  }
  SNFResult r;
  r.divisors.reserve(diag);
  for (std::size_t t = 0; t < diag; ++t) r.divisors.push_back(a(t, t));
  r.left = std::move(left);
  r.right = std::move(right);
  return r;
}

mpz_class det(const IntMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

mpq_class det(const RatMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "det: matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  mpq_class d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      mpq_class f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "inverse: matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n, mpq_class(0), mpq_class(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) fail(ErrorKind::kMath, "inverse: singular matrix");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    mpq_class piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      mpq_class f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  return column_echelon(a, nullptr);
}

bool solve_in_lattice(const IntMatrix& h, const std::vector<mpz_class>& v, std::vector<mpz_class>* x) {
  const std::size_t n = h.rows();
  if (!h.is_square() || v.size() != n) fail(ErrorKind::kInvalidInput, "solve_in_lattice: shape mismatch");
  std::vector<mpz_class> rem = v, sol(n);
  // Forward substitution on the lower-triangular basis.
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) == 0) fail(ErrorKind::kMath, "solve_in_lattice: singular basis");
    if (rem[i] % h(i, i) != 0) return false;
    sol[i] = rem[i] / h(i, i);
    for (std::size_t r = i; r < n; ++r) rem[r] -= sol[i] * h(r, i);
  }
  if (x) *x = std::move(sol);
  return true;
}

// ---------------------------------------------------------------------------

RealMatrix real_zero(std::size_t rows, std::size_t cols, unsigned precision_bits) {
  return RealMatrix(rows, cols, Real(precision_bits));
}

RealMatrix real_identity(std::size_t n, unsigned precision_bits) {
  return RealMatrix::identity(n, Real(precision_bits), Real(1L, precision_bits));
}

RealMatrix to_real(const IntMatrix& m, unsigned precision_bits) {
  RealMatrix out = real_zero(m.rows(), m.cols(), precision_bits);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Real(m(i, j), precision_bits);
  return out;
}

RealMatrix to_real(const RatMatrix& m, unsigned precision_bits) {
  RealMatrix out = real_zero(m.rows(), m.cols(), precision_bits);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Real(m(i, j), precision_bits);
  return out;
}

unsigned precision_of(const RealMatrix& m) {
  unsigned p = 0;
  for (const auto& v : m.data()) p = p == 0 ? v.precision() : std::min(p, v.precision());
  return p == 0 ? Real::kMinPrecision : p;
}

RealMatrix scale(const RealMatrix& m, const Real& s) {
  RealMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * s;
  return out;
}

Real frobenius_norm(const RealMatrix& m) {
  Real acc(precision_of(m));
  for (const auto& v : m.data()) acc += v * v;
  return sqrt(acc);
}

Real det(const RealMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "det: matrix is not square");
  const std::size_t n = m.rows();
  RealMatrix a = m;
  Real d(1L, precision_of(m));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a(i, k)) > abs(a(p, k))) p = i;
    if (a(p, k).is_zero()) return Real(precision_of(m));
    if (p != k) {
      a.swap_rows(k, p);
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

RealMatrix inverse(const RealMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "inverse: matrix is not square");
  const std::size_t n = m.rows();
  const unsigned prec = precision_of(m);
  RealMatrix a = m;
  RealMatrix inv = real_identity(n, prec);
  const Real tiny = ldexp(frobenius_norm(m), -static_cast<long>(prec) + 8);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a(i, k)) > abs(a(p, k))) p = i;
    if (abs(a(p, k)) <= tiny) fail(ErrorKind::kMath, "inverse: matrix is numerically singular");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Real piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      Real f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

RealMatrix matrix_exp(const RealMatrix& m) {
  if (!m.is_square()) fail(ErrorKind::kInvalidInput, "matrix_exp: matrix is not square");
  const std::size_t n = m.rows();
  const unsigned prec = precision_of(m);
  const double norm = frobenius_norm(m).to_double();
  long squarings = norm > 0.5 ? static_cast<long>(std::ceil(std::log2(norm))) + 1 : 0;
  RealMatrix x = scale(m, ldexp(Real(1L, prec), -squarings));
  RealMatrix result = real_identity(n, prec);
  RealMatrix term = real_identity(n, prec);
  const Real eps = two_pow_neg(prec + 4, prec);
  for (long k = 1; k < 10 * static_cast<long>(prec); ++k) {
    term = scale(term * x, Real(1L, prec) / Real(k, prec));
    result = result + term;
    if (frobenius_norm(term) < eps) break;
  }
  for (long s = 0; s < squarings; ++s) result = result * result;
  return result;
}

RealMatrix matrix_sqrt(const RealMatrix& m) {
  const std::size_t n = m.rows();
  const unsigned prec = precision_of(m);
  RealMatrix y = m;
  RealMatrix z = real_identity(n, prec);
  const Real tol = two_pow_neg(prec - prec / 8, prec);
  for (int it = 0; it < 200; ++it) {
    RealMatrix y_inv = inverse(y);
    RealMatrix z_inv = inverse(z);
    RealMatrix y_next = scale(y + z_inv, Real(0.5, prec));
    RealMatrix z_next = scale(z + y_inv, Real(0.5, prec));
    Real change = frobenius_norm(y_next - y);
    Real size = frobenius_norm(y_next);
    y = std::move(y_next);
    z = std::move(z_next);
    if (change <= tol * size) return y;
  }
  fail(ErrorKind::kMath, "matrix_sqrt: Denman-Beavers iteration did not converge");
}

namespace {

void check_principal_log_exists(const RealMatrix& m) {
  const std::size_t n = m.rows();
  Eigen::MatrixXd d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(d, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::kMath, "no principal logarithm: eigenvalue computation failed");
  const double scale_ref = std::max(d.norm(), 1e-300);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> lambda = solver.eigenvalues()(i);
    if (std::abs(lambda) <= 1e-13 * scale_ref) fail(ErrorKind::kMath, "no principal logarithm: matrix is singular");
    if (lambda.real() < 0 && std::abs(lambda.imag()) <= 1e-12 * std::abs(lambda))
      fail(ErrorKind::kMath, "no principal logarithm: eigenvalue on the negative real axis");
  }
}

}  // namespace

RealMatrix principal_log(const RealMatrix& m) {
  if (!m.is_square() || m.rows() == 0) fail(ErrorKind::kInvalidInput, "principal_log: matrix is not square");
  check_principal_log_exists(m);
  const std::size_t n = m.rows();
  const unsigned prec = precision_of(m);
  const RealMatrix id = real_identity(n, prec);

  RealMatrix x = m;
  long roots = 0;
  const Real threshold(0.25, prec);
  while (frobenius_norm(x - id) > threshold) {
    if (++roots > 100) fail(ErrorKind::kMath, "no principal logarithm: square-root scaling diverged");
    x = matrix_sqrt(x);
  }
  // log X = 2 * atanh(Z) with Z = (X - I)(X + I)^{-1}.
  RealMatrix z = (x - id) * inverse(x + id);
  RealMatrix z2 = z * z;
  RealMatrix power = z;
  RealMatrix sum = z;
  const Real eps = two_pow_neg(prec + 4, prec);
  for (long k = 3; k < 4 * static_cast<long>(prec); k += 2) {
    power = power * z2;
    RealMatrix term = scale(power, Real(1L, prec) / Real(k, prec));
    sum = sum + term;
    if (frobenius_norm(term) < eps) break;
  }
  RealMatrix out = scale(sum, ldexp(Real(1L, prec), roots + 1));
  for (const auto& v : out.data())
    if (!v.is_finite()) fail(ErrorKind::kMath, "no principal logarithm: non-finite result");
  return out;
}

}  // namespace nfq
