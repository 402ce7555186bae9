#include "nfq/arith.hpp"

#include <algorithm>

#include "nfq/error.hpp"

namespace nfq {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

bool is_prime(const mpz_class& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

namespace {

constexpr unsigned kTrialLimit = 10000;

// One nontrivial factor of composite n, or 0 if the budget ran out.
mpz_class brent_rho(const mpz_class& n, std::uint64_t& budget) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      if (budget < r) return 0;
      budget -= r;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t chunk = std::min(m, r - k);
        if (budget < chunk) return 0;
        budget -= chunk;
        for (std::uint64_t i = 0; i < chunk; ++i) {
          step(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += chunk;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      // Backtrack one step at a time from the last saved state.
      do {
        step(ys);
        mpz_class diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    // Cycle without a split: retry with the next polynomial constant.
  }
}

void split(const mpz_class& n, std::uint64_t& budget, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    split(r, budget, out);
    split(r, budget, out);
    return;
  }
  mpz_class d = brent_rho(n, budget);
  if (d == 0) fail(ErrorKind::kEffort, "factor_integer: effort bound exhausted factoring " + n.get_str());
  split(d, budget, out);
  split(n / d, budget, out);
}

}  // namespace

std::vector<mpz_class> factor_integer(const mpz_class& n_in, std::uint64_t effort) {
  if (n_in < 1) fail(ErrorKind::kInvalidInput, "factor_integer: argument must be positive");
  std::vector<mpz_class> out;
  mpz_class n = n_in;
  static const std::vector<std::uint64_t> small = primes_up_to(kTrialLimit);
  for (std::uint64_t p : small) {
    if (n == 1) break;
    if (mpz_class(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(static_cast<unsigned long>(p));
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  std::uint64_t budget = effort;
  split(n, budget, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<mpz_class, unsigned>> factor_integer_grouped(const mpz_class& n, std::uint64_t effort) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (const auto& p : factor_integer(n, effort)) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail(ErrorKind::kInvalidInput, "valuation of zero");
  mpz_class m = abs(n);
  unsigned e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++e;
  }
  return e;
}

}  // namespace nfq
