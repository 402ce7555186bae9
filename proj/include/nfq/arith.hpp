#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace nfq {

/// Default Pollard-rho iteration budget for factor_integer.
inline constexpr std::uint64_t kDefaultFactorEffort = std::uint64_t{1} << 32;

/// All primes <= limit, ascending (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

bool is_prime(const mpz_class& n);

/// Sorted prime multiset with product n. Trial division by small primes, then
/// Brent's variant of Pollard rho. Throws ErrorKind::kEffort once the total
/// number of rho iterations exceeds `effort`.
std::vector<mpz_class> factor_integer(const mpz_class& n, std::uint64_t effort = kDefaultFactorEffort);

/// Distinct primes of n with multiplicity, ascending.
std::vector<std::pair<mpz_class, unsigned>> factor_integer_grouped(const mpz_class& n,
                                                                   std::uint64_t effort = kDefaultFactorEffort);

/// Largest e with p^e | n (n != 0).
unsigned valuation(const mpz_class& n, const mpz_class& p);

}  // namespace nfq
