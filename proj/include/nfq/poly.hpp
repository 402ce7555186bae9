#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

// Dense univariate polynomials, coefficients stored low degree first. The
// zero polynomial is the empty vector; nonzero polynomials never carry a
// trailing zero coefficient.
namespace nfq::poly {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

void trim(ZPoly& f);
void trim(QPoly& f);
inline int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
inline int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly to_q(const ZPoly& f);
std::string to_string(const ZPoly& f, const std::string& var = "x");

ZPoly derivative(const ZPoly& f);
QPoly derivative(const QPoly& f);
ZPoly mul(const ZPoly& a, const ZPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& s);
// Quotient and remainder over Q; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly rem(const QPoly& a, const QPoly& b);
// Monic gcd over Q (zero if both are zero).
QPoly gcd(QPoly a, QPoly b);
// s, t, g with s*a + t*b = g = gcd(a, b) monic.
struct XGcd {
  QPoly s, t, g;
};
XGcd xgcd(const QPoly& a, const QPoly& b);
mpq_class eval(const QPoly& f, const mpq_class& x);
mpz_class eval(const ZPoly& f, const mpz_class& x);

/// Resultant via the determinant of the Sylvester matrix.
mpz_class resultant(const ZPoly& f, const ZPoly& g);

/// (-1)^(n(n-1)/2) * resultant(f, f') for monic f of degree n.
mpz_class discriminant(const ZPoly& f);

bool is_squarefree(const ZPoly& f);

/// Number of distinct real roots, counted exactly with a Sturm sequence.
unsigned count_real_roots(const ZPoly& f);

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients in [0, p).

ZPoly reduce_mod(const ZPoly& f, const mpz_class& p);
ZPoly mod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly mod_sub(const ZPoly& a, const ZPoly& b, const mpz_class& p);
std::pair<ZPoly, ZPoly> mod_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly mod_gcd(ZPoly a, ZPoly b, const mpz_class& p);
ZPoly mod_powmod(const ZPoly& base, const mpz_class& e, const ZPoly& modulus, const mpz_class& p);
ZPoly mod_monic(const ZPoly& f, const mpz_class& p);

struct ModFactor {
  ZPoly factor;  // monic irreducible over F_p
  unsigned multiplicity;
};

/// Complete factorization over F_p (square-free, distinct-degree and
/// Cantor-Zassenhaus equal-degree splitting). Output sorted by degree, then
/// by coefficients; deterministic.
std::vector<ModFactor> factor_mod(const ZPoly& f, const mpz_class& p);

}  // namespace nfq::poly
