#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfq/exact_linalg.hpp"
#include "nfq/poly.hpp"
#include "nfq/real.hpp"

namespace nfq {

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// A number field K = Q[x]/(f) together with a trusted Z-basis of its ring of
/// integers. All invariants are computed once at construction.
struct NumberField {
  std::string name;
  poly::ZPoly defining_poly;  // monic, low degree first, leading 1 included
  int degree = 0;             // n
  int real_places = 0;        // n1
  int complex_places = 0;     // n2
  int unit_rank = 0;          // n1 + n2 - 1
  // Row j expresses omega_j over the power basis 1, t, ..., t^(n-1).
  RatMatrix integral_basis;
  RatMatrix integral_basis_inverse;
  mpz_class poly_disc;
  mpz_class field_disc;
  mpz_class index;  // [O : Z[t]], poly_disc = index^2 * field_disc
  // True when no integral basis was supplied and the power basis was taken as
  // the ring of integers without verification.
  bool maximal_order_assumed = false;
  unsigned precision_bits = kDefaultPrecisionBits;
  // mult_table[i] is the matrix of multiplication by omega_i: column j holds
  // the integral-basis coordinates of omega_i * omega_j.
  std::vector<IntMatrix> mult_table;

  int places() const { return real_places + complex_places; }
};

/// Builds a field from a monic integer polynomial (low degree first, leading
/// coefficient included) and an optional integral basis.
NumberField make_field(const poly::ZPoly& defining_poly, const std::optional<RatMatrix>& integral_basis = std::nullopt,
                       unsigned precision_bits = kDefaultPrecisionBits, std::string name = {});

/// Parses a field-spec JSON document (grammar in README.md).
NumberField parse_field(const std::string& json_text);

/// (n1, n2) from an exact Sturm count; polynomial must be square-free.
std::pair<int, int> signature(const poly::ZPoly& f);

mpz_class poly_discriminant(const poly::ZPoly& f);

/// poly_disc / index^2 where index = 1/|det(integral_basis)|.
mpz_class field_discriminant(const poly::ZPoly& f, const RatMatrix& integral_basis);

/// Best-effort irreducibility certificate: rejects polynomials with a rational
/// root and accepts those whose factor-degree patterns modulo up to five good
/// primes leave no room for a proper factor.
bool certify_irreducible(const poly::ZPoly& f);

// ---------------------------------------------------------------------------
// Elements

/// Element of K by its rational coordinates over the integral basis.
struct FieldElement {
  std::vector<mpq_class> coords;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

FieldElement elem_from_integer(const NumberField& field, const mpz_class& value);
FieldElement elem_from_rational(const NumberField& field, const mpq_class& value);
FieldElement elem_from_power_basis(const NumberField& field, const poly::QPoly& power_coords);
poly::QPoly elem_to_power_basis(const NumberField& field, const FieldElement& x);
/// The generator t of K = Q[t].
FieldElement elem_generator(const NumberField& field);

bool elem_is_zero(const FieldElement& x);
bool elem_is_integral(const FieldElement& x);
/// Least positive integer d with d*x integral.
mpz_class elem_denominator(const FieldElement& x);

FieldElement elem_add(const FieldElement& x, const FieldElement& y);
FieldElement elem_sub(const FieldElement& x, const FieldElement& y);
FieldElement elem_mul(const NumberField& field, const FieldElement& x, const FieldElement& y);
FieldElement elem_inv(const NumberField& field, const FieldElement& x);
FieldElement elem_pow(const NumberField& field, const FieldElement& x, long e);

/// Absolute norm, exactly, via a resultant.
mpq_class elem_norm(const NumberField& field, const FieldElement& x);

/// Matrix of multiplication by an integral element on the integral basis.
IntMatrix elem_mult_matrix(const NumberField& field, const FieldElement& x);

std::string elem_to_string(const FieldElement& x);

// ---------------------------------------------------------------------------
// Embeddings

struct Complex {
  Real re;
  Real im;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Real abs(const Complex& z);

struct EmbeddingData {
  std::vector<Real> real_roots;        // ascending
  std::vector<Complex> complex_roots;  // one per conjugate pair, Im > 0
  // Row j: real embeddings of omega_j, then sqrt(2)*Re and sqrt(2)*Im for
  // each complex place. |det| = sqrt(|disc|).
  RealMatrix minkowski;
  unsigned precision_bits = kDefaultPrecisionBits;
};

/// Roots by a double-precision companion eigensolve polished with Newton's
/// method at the target precision. Throws kMath on non-convergence.
EmbeddingData embeddings(const NumberField& field, unsigned precision_bits);

/// sigma_j(x) for every place j (real places first); real places have im = 0.
std::vector<Complex> embed(const NumberField& field, const EmbeddingData& emb, const FieldElement& x);

// ---------------------------------------------------------------------------
// Log coordinates

/// Point of G = R^(n1+n2-1) x Z_2^n1 x (R/Z)^n2 x Z^|S|.
struct GroupPoint {
  std::vector<Real> u;           // length n1 + n2 - 1
  std::vector<int> mu;           // n1 bits
  std::vector<Real> theta;       // n2 values in [0, 1)
  std::vector<long> valuations;  // |S|
};

GroupPoint zero_point(const NumberField& field, std::size_t s_size, unsigned precision_bits);
GroupPoint add_points(const GroupPoint& a, const GroupPoint& b);
GroupPoint negate_point(const GroupPoint& a);
Real wrap_unit_interval(const Real& t);

/// Completes u to all n1+n2 places. The last coordinate is fixed by
/// sum_j d_j u_j = log_norm_target, with d_j = 1 at real places and 2 at
/// complex places, so that phi(u) has absolute norm exp(log_norm_target).
std::vector<Real> complete_log_vector(const NumberField& field, const std::vector<Real>& u, const Real& log_norm_target);

/// phi(u, mu, theta) in E, one complex value per place.
std::vector<Complex> phi_map(const NumberField& field, const GroupPoint& point, const EmbeddingData& emb,
                             const std::optional<Real>& log_norm_target = std::nullopt);

// ---------------------------------------------------------------------------

/// Fundamental unit (x + y*sqrt(d)) / 2 of the real quadratic field Q(sqrt(d)),
/// x, y > 0, found by the continued fraction of sqrt(d) or (1 + sqrt(d)) / 2.
struct QuadraticUnit {
  mpz_class d;
  mpz_class x;
  mpz_class y;
  int norm = 0;
};

QuadraticUnit fundamental_unit_real_quadratic(const mpz_class& d);

/// Square-free d with K = Q(sqrt(d)) for a quadratic field.
mpz_class quadratic_radicand(const NumberField& field);

/// Expresses a quadratic unit inside `field`, which must be Q(sqrt(unit.d)).
FieldElement quadratic_unit_element(const NumberField& field, const QuadraticUnit& unit);

}  // namespace nfq
