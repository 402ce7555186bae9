#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "nfq/error.hpp"
#include "nfq/ideal.hpp"
#include "test_util.hpp"

using namespace nfq;

namespace {

FieldElement random_element(std::mt19937_64& rng, int n, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  FieldElement x;
  for (int i = 0; i < n; ++i) x.coords.push_back(d(rng));
  return x;
}

// Number of roots of f mod p, by brute force.
int roots_mod(const poly::ZPoly& f, long p) {
  int count = 0;
  for (long x = 0; x < p; ++x) {
    mpz_class v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    if (v % p == 0) ++count;
  }
  return count;
}

// Reduced primitive positive definite forms of discriminant d < 0.
long class_number(long d) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -d; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - d) % (4 * a) != 0) continue;
      const long c = (b * b - d) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

}  // namespace

TEST_CASE("worked factorization of (30) in Q(i)") {
  const NumberField k = testutil::field("qi");
  const FractionalIdeal I = principal_ideal(k, elem_from_integer(k, 30));
  CHECK(ideal_norm(I) == 900);
  const Factorization f = factor_ideal(k, I);
  REQUIRE(f.factors.size() == 4);
  std::vector<long> exps, norms;
  for (const auto& [P, e] : f.factors) {
    exps.push_back(e);
    norms.push_back(P.norm.get_si());
  }
  CHECK(exps == std::vector<long>{2, 1, 1, 1});
  CHECK(norms == std::vector<long>{2, 9, 5, 5});
  CHECK(reassemble(k, f) == I);
}

TEST_CASE("unit ideal and a quotient with mixed exponents") {
  const NumberField k = testutil::field("qi");
  CHECK(factor_ideal(k, unit_ideal(k)).factors.empty());
  const FractionalIdeal q = ideal_mul(k, principal_ideal(k, FieldElement{{2, 1}}), ideal_inv(k, principal_ideal(k, FieldElement{{2, -1}})));
  const Factorization f = factor_ideal(k, q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].second * f.factors[1].second == -1);
  CHECK(reassemble(k, f) == q);
  CHECK(ideal_norm(q) == 1);
}

TEST_CASE("ideal norm equals |element norm|") {
  std::mt19937_64 rng(61);
  for (const char* name : {"qi", "qsqrt2", "qsqrtm5", "qsqrt5", "cubic2", "qsqrt5_half"}) {
    const NumberField k = testutil::field(name);
    for (int t = 0; t < 20; ++t) {
      const FieldElement x = random_element(rng, k.degree, 12), y = random_element(rng, k.degree, 12);
      if (elem_is_zero(x) || elem_is_zero(y)) continue;
      const FractionalIdeal I = principal_ideal(k, x), J = principal_ideal(k, y);
      CHECK(ideal_norm(I) == abs(elem_norm(k, x)));
      CHECK(ideal_norm(ideal_mul(k, I, J)) == ideal_norm(I) * ideal_norm(J));
      CHECK(ideal_mul(k, I, J) == principal_ideal(k, elem_mul(k, x, y)));
      CHECK(ideal_mul(k, I, ideal_inv(k, I)) == unit_ideal(k));
    }
  }
}

TEST_CASE("factorization round trip on random fractional ideals") {
  std::mt19937_64 rng(67);
  for (const char* name : testutil::kShipped) {
    const NumberField k = testutil::field(name);
    for (int t = 0; t < 15; ++t) {
      FieldElement x = random_element(rng, k.degree, 20);
      if (elem_is_zero(x)) continue;
      const long den = 1 + static_cast<long>(rng() % 12);
      for (auto& c : x.coords) c /= den;
      FractionalIdeal I;
      try {
        I = principal_ideal(k, x);
        const Factorization f = factor_ideal(k, I);
        CHECK(reassemble(k, f) == I);
        for (const auto& [P, e] : f.factors) CHECK(valuation(k, x, P) == e);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kUnsupported);  // index divisor of x^2 - 5
      }
    }
  }
}

TEST_CASE("splitting matches root counts mod p") {
  for (const char* name : {"qi", "qsqrt2", "qsqrtm5", "qsqrtm23", "cubic2"}) {
    const NumberField k = testutil::field(name);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
      const auto above = primes_above(k, p);
      int sum_ef = 0, linear = 0;
      for (const auto& P : above) {
        sum_ef += P.e * P.f;
        if (P.f == 1) ++linear;
        CHECK(P.norm == mpz_class(p) * (P.f == 2 ? p : 1) * (P.f == 3 ? p * p : 1));
        CHECK(ideal_norm(P.ideal) == P.norm);
      }
      CHECK(sum_ef == k.degree);
      CHECK(linear == roots_mod(k.defining_poly, p));
    }
  }
}

TEST_CASE("index divisors are reported as unsupported") {
  const NumberField k = testutil::field("qsqrt5_half");
  try {
    primes_above(k, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnsupported);
  }
  CHECK(primes_above(k, 5).size() == 1);
  CHECK(primes_above(k, 5)[0].e == 2);
}

TEST_CASE("ideal specs") {
  const NumberField k = testutil::field("qi");
  const auto doc = nlohmann::json::parse(R"({"hnf": [[1, 0], [3, 5]], "denominator": 1})");
  const FractionalIdeal I = ideal_from_json(k, doc);
  CHECK(ideal_norm(I) == 5);
  CHECK(ideal_contains(k, I, FieldElement{{2, 1}}) != ideal_contains(k, I, FieldElement{{2, -1}}));
  CHECK_THROWS_AS(ideal_from_json(k, nlohmann::json::parse(R"({"hnf": [[2, 0], [1, 1]]})")), Error);
  CHECK_THROWS_AS(ideal_from_json(k, nlohmann::json::parse(R"({"element": [0, 0]})")), Error);
}

TEST_CASE("S-unit detection") {
  const NumberField k = testutil::field("qi");
  const auto S = primes_above(k, 5);
  const SUnitCheck c = is_s_unit(k, FieldElement{{2, 1}}, {S[0]});
  CHECK(c.is_s_unit);
  CHECK(c.exponents == std::vector<long>{1});
  CHECK_FALSE(is_s_unit(k, FieldElement{{2, -1}}, {S[0]}).is_s_unit);
  CHECK(is_s_unit(k, FieldElement{{0, 1}}, {}).is_s_unit);
}

TEST_CASE("class numbers from the reduced-forms oracle") {
  const std::vector<std::pair<const char*, long>> cases = {{R"({"poly":[1,0]})", -4},  {R"({"poly":[5,0]})", -20},
                                                           {R"({"poly":[6,-1]})", -23}, {R"({"poly":[14,0]})", -56},
                                                           {R"({"poly":[26,0]})", -104}, {R"({"poly":[21,0]})", -84}};
  for (const auto& [spec, d] : cases) {
    const NumberField k = parse_field(spec);
    CHECK(k.field_disc == d);
    const auto divisors = class_group_bruteforce(k);
    mpz_class h = 1;
    for (const auto& x : divisors) h *= x;
    CHECK(h == class_number(d));
    CHECK(reduced_forms(d).size() == static_cast<std::size_t>(class_number(d)));
  }
  CHECK(class_group_bruteforce(parse_field(R"({"poly":[21,0]})")) == std::vector<mpz_class>{2, 2});
  CHECK(class_group_bruteforce(parse_field(R"({"poly":[6,-1]})")) == std::vector<mpz_class>{3});
}

TEST_CASE("form composition and prime classes") {
  const QuadForm f{2, 2, 3};  // disc -20
  CHECK(form_discriminant(f) == -20);
  CHECK(reduce_form(compose_forms(f, f)) == identity_form(-20));
  const NumberField k = testutil::field("qsqrtm5");
  const auto above2 = primes_above(k, 2);
  CHECK(prime_class(k, above2[0]) == f);
  const auto above3 = primes_above(k, 3);
  for (const auto& P : above3) CHECK(reduce_form(compose_forms(prime_class(k, P), f)) == identity_form(-20));
}
