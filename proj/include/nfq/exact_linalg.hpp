#pragma once

#include <gmpxx.h>

#include <vector>

#include "nfq/matrix.hpp"
#include "nfq/real.hpp"

namespace nfq {

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using RealMatrix = Matrix<Real>;

// Hermite normal form, column convention: input * transform = hnf, where hnf
// is lower triangular with a positive diagonal and every entry left of the
// diagonal reduced into [0, diagonal). For a tall full-column-rank input the
// shape is lower echelon (one pivot per column, pivot rows increasing).
struct HNFResult {
  IntMatrix hnf;
  IntMatrix transform;  // unimodular, cols x cols
};

// Smith normal form: left * input * right = diag(divisors).
// Divisors are stored in descending divisibility order, d[i+1] | d[i]. A rank
// deficient input yields zero divisors, which sort first in this order.
struct SNFResult {
  std::vector<mpz_class> divisors;
  IntMatrix left;
  IntMatrix right;

  // Common ascending order d[i] | d[i+1].
  std::vector<mpz_class> ascending() const { return {divisors.rbegin(), divisors.rend()}; }
};

IntMatrix int_identity(std::size_t n);
RatMatrix to_rational(const IntMatrix& m);

/// Column HNF with unimodular transform. Throws kMath on column-rank deficiency.
HNFResult hnf(const IntMatrix& m);

/// Column HNF basis of the lattice spanned by the columns of `generators`,
/// which may be rank deficient or have more columns than rows. Returns the
/// rows x rank echelon basis.
IntMatrix hnf_span(const IntMatrix& generators);

/// HNF of the full-rank lattice spanned by `generators` together with
/// D * Z^rows, where D = `modulus`. Generators are reduced mod D first so
/// entry size stays bounded by D.
IntMatrix hnf_modular(const IntMatrix& generators, const mpz_class& modulus);

SNFResult snf(const IntMatrix& m);

/// Basis (as columns) of the integer kernel {x : m x = 0}; may have no columns.
IntMatrix kernel_basis(const IntMatrix& m);

/// Exact determinant by Bareiss fraction-free elimination.
mpz_class det(const IntMatrix& m);
mpq_class det(const RatMatrix& m);

/// Exact inverse; throws kMath when singular.
RatMatrix inverse(const RatMatrix& m);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Solves hnf_basis * x = v for an integer vector x, where hnf_basis is the
/// square output of hnf(). Returns false when v is outside the lattice.
bool solve_in_lattice(const IntMatrix& hnf_basis, const std::vector<mpz_class>& v, std::vector<mpz_class>* x = nullptr);

// ---------------------------------------------------------------------------
// Real matrices. Results carry the precision of their least precise input.

RealMatrix real_zero(std::size_t rows, std::size_t cols, unsigned precision_bits);
RealMatrix real_identity(std::size_t n, unsigned precision_bits);
RealMatrix to_real(const IntMatrix& m, unsigned precision_bits);
RealMatrix to_real(const RatMatrix& m, unsigned precision_bits);
unsigned precision_of(const RealMatrix& m);

RealMatrix scale(const RealMatrix& m, const Real& s);
Real frobenius_norm(const RealMatrix& m);
Real det(const RealMatrix& m);

/// Gauss-Jordan with partial pivoting; throws kMath when numerically singular.
RealMatrix inverse(const RealMatrix& m);

RealMatrix matrix_exp(const RealMatrix& m);

/// Principal square root via the Denman-Beavers iteration.
RealMatrix matrix_sqrt(const RealMatrix& m);

/// Principal logarithm by inverse scaling and squaring. Throws kMath ("no
/// principal logarithm") when the input is singular or has an eigenvalue on
/// the closed negative real axis.
RealMatrix principal_log(const RealMatrix& m);

}  // namespace nfq
