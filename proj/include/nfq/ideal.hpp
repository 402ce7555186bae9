#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nfq/arith.hpp"
#include "nfq/exact_linalg.hpp"
#include "nfq/numberfield.hpp"

namespace nfq {

/// I = (1/denominator) * span(basis columns), basis in column HNF over the
/// integral basis. The denominator is minimal.
struct FractionalIdeal {
  mpz_class denominator = 1;
  IntMatrix basis;
  friend bool operator==(const FractionalIdeal&, const FractionalIdeal&) = default;
};

/// Prime (p, g(t)) from the Kummer-Dedekind factorization of the defining
/// polynomial mod p.
struct PrimeIdeal {
  mpz_class p;
  int f = 0;  // residue degree
  int e = 0;  // ramification index
  poly::ZPoly generator_poly;
  mpz_class norm;  // p^f
  FractionalIdeal ideal;
  // beta in O with beta * P contained in pO and beta not in pO.
  FieldElement anti_uniformizer;
};

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b);
/// Total order: p, then f, then generator coefficients.
bool prime_less(const PrimeIdeal& a, const PrimeIdeal& b);
std::string prime_label(const PrimeIdeal& P);

struct Factorization {
  std::vector<std::pair<PrimeIdeal, long>> factors;  // sorted by prime_less
};

/// Builds the ideal generated over Z by the columns of `generators` divided by
/// `denominator`, then normalizes. Throws kInvalidInput when the span is not
/// full rank or not closed under multiplication by O.
FractionalIdeal make_ideal(const NumberField& field, const IntMatrix& generators, const mpz_class& denominator);

FractionalIdeal unit_ideal(const NumberField& field);
FractionalIdeal principal_ideal(const NumberField& field, const FieldElement& x);
FractionalIdeal scalar_ideal(const NumberField& field, const mpq_class& q);

mpq_class ideal_norm(const FractionalIdeal& I);
bool ideal_is_integral(const FractionalIdeal& I);
/// Exact check that omega_i * (basis column) stays inside the lattice.
bool ideal_is_closed(const NumberField& field, const FractionalIdeal& I);
bool ideal_contains(const NumberField& field, const FractionalIdeal& I, const FieldElement& x);

FractionalIdeal ideal_mul(const NumberField& field, const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal ideal_inv(const NumberField& field, const FractionalIdeal& I);
FractionalIdeal ideal_pow(const NumberField& field, const FractionalIdeal& I, long k);

/// Elements of O for the basis columns of the integral ideal denominator * I.
std::vector<FieldElement> ideal_generators(const NumberField& field, const FractionalIdeal& I);

/// Throws kUnsupported when p divides the index [O : Z[t]].
std::vector<PrimeIdeal> primes_above(const NumberField& field, const mpz_class& p);

/// v_P of a nonzero element.
long valuation(const NumberField& field, const FieldElement& x, const PrimeIdeal& P);
long valuation(const NumberField& field, const FractionalIdeal& I, const PrimeIdeal& P);

/// Six-step factorization: norm of dI, factor it, primes above each p,
/// valuations of dI, the same for dO, subtract.
Factorization factor_ideal(const NumberField& field, const FractionalIdeal& I,
                           std::uint64_t effort = kDefaultFactorEffort);

FractionalIdeal reassemble(const NumberField& field, const Factorization& fac);

/// Product of P_j^(-v_j).
FractionalIdeal s_ideal(const NumberField& field, const std::vector<PrimeIdeal>& S, const std::vector<long>& v);

struct SUnitCheck {
  bool is_s_unit = false;
  std::vector<long> exponents;  // aligned with S; empty when not an S-unit
};

SUnitCheck is_s_unit(const NumberField& field, const FieldElement& x, const std::vector<PrimeIdeal>& S,
                     std::uint64_t effort = kDefaultFactorEffort);

/// Ideal-spec sub-document: {"element": [...]} or {"hnf": [[...]], "denominator": d}.
FractionalIdeal ideal_from_json(const NumberField& field, const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Imaginary quadratic class groups from binary quadratic forms

struct QuadForm {
  mpz_class a, b, c;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

mpz_class form_discriminant(const QuadForm& f);
QuadForm reduce_form(QuadForm f);
QuadForm compose_forms(const QuadForm& f, const QuadForm& g);
QuadForm identity_form(const mpz_class& disc);
/// Reduced primitive positive definite forms of discriminant disc < 0, sorted.
std::vector<QuadForm> reduced_forms(const mpz_class& disc);

/// Class of a prime ideal as a reduced form. Requires an imaginary quadratic
/// field with the power basis as integral basis.
QuadForm prime_class(const NumberField& field, const PrimeIdeal& P);

/// Elementary divisors (descending, 1s stripped) of the class group of an
/// imaginary quadratic field with |disc| <= 10^4, from the composition table.
std::vector<mpz_class> class_group_bruteforce(const NumberField& field);

/// Basis of the relation lattice {x in Z^k : prod P_j^(x_j) principal} for
/// the given primes, as rows; triangular, built from the composition table.
IntMatrix class_group_relations(const NumberField& field, const std::vector<PrimeIdeal>& primes);

}  // namespace nfq
