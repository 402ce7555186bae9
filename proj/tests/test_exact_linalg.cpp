#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "nfq/error.hpp"
#include "nfq/exact_linalg.hpp"
#include "test_util.hpp"

using namespace nfq;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<std::vector<long long>> to_ll(const IntMatrix& m) {
  std::vector<std::vector<long long>> a(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_si();
  return a;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = int_identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const long c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(static_cast<std::size_t>(i), k) += c * u(static_cast<std::size_t>(j), k);
  }
  return u;
}

// Column lattice membership: adj(B) v == 0 mod det B.
long long residue_count(const IntMatrix& b) {
  const std::size_t n = b.rows();
  const long long d = std::llabs(testutil::det_ll(to_ll(b)));
  std::vector<std::vector<long long>> adj(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<long long>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(b(r, c).get_si());
        minor.push_back(row);
      }
      const long long cof = n == 1 ? 1 : testutil::det_ll(minor);
      adj[i][j] = ((i + j) % 2 ? -1 : 1) * cof;
    }
  // Points of the lattice in the box [0, d)^n are the classes of L / dZ^n.
  long long in_box = 0;
  std::vector<long long> v(n, 0);
  while (true) {
    bool member = true;
    for (std::size_t i = 0; i < n && member; ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += adj[i][j] * v[j];
      member = s % d == 0;
    }
    in_box += member;
    std::size_t k = 0;
    while (k < n && ++v[k] == d) v[k++] = 0;
    if (k == n) break;
  }
  long long total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  return total / in_box;
}

void check_hnf_shape(const IntMatrix& input, const HNFResult& r) {
  const IntMatrix& h = r.hnf;
  CHECK(input * r.transform == h);
  CHECK(abs(det(r.transform)) == 1);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    CHECK(h(i, i) > 0);
    for (std::size_t j = i + 1; j < h.cols(); ++j) CHECK(h(i, j) == 0);
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(h(i, j) >= 0);
      CHECK(h(i, j) < h(i, i));
    }
  }
}

}  // namespace

TEST_CASE("hnf of a worked 2x2 example") {
  const IntMatrix m{{2, 0}, {1, 3}};
  const HNFResult r = hnf(m);
  check_hnf_shape(m, r);
  CHECK(r.hnf == IntMatrix{{2, 0}, {1, 3}});
  const IntMatrix m2{{4, 6}, {0, 2}};
  const HNFResult r2 = hnf(m2);
  check_hnf_shape(m2, r2);
  CHECK(r2.hnf(0, 0) * r2.hnf(1, 1) == 8);
}

TEST_CASE("hnf shape on random full-rank matrices") {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 60) {
    const std::size_t n = 2 + done % 3;
    IntMatrix m = random_matrix(rng, n, n, -9, 9);
    if (det(m) == 0) continue;
    check_hnf_shape(m, hnf(m));
    ++done;
  }
}

TEST_CASE("hnf rejects rank deficiency") {
  CHECK_THROWS_AS(hnf(IntMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("index equals the brute-force residue count") {
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 40) {
    const std::size_t n = done % 2 ? 3 : 2;
    IntMatrix m = random_matrix(rng, n, n, -6, 6);
    const mpz_class d = abs(det(m));
    if (d == 0 || (n == 3 && d > 40)) continue;
    const IntMatrix h = hnf(m).hnf;
    mpz_class prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= h(i, i);
    CHECK(prod == testutil::Z(residue_count(m)));
    ++done;
  }
}

TEST_CASE("hnf_modular agrees with hnf of the generators plus modulus") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    IntMatrix g = random_matrix(rng, 3, 5, -20, 20);
    const mpz_class mod = 60;
    IntMatrix both(3, 8);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 5; ++j) both(i, j) = g(i, j);
      both(i, 5 + i) = mod;
    }
    CHECK(hnf_modular(g, mod) == hnf_span(both));
  }
}

TEST_CASE("snf divisors are invariant under unimodular scrambling") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 3;
    IntMatrix m = random_matrix(rng, n, n, -8, 8);
    const SNFResult base = snf(m);
    for (std::size_t i = 0; i + 1 < base.divisors.size(); ++i)
      if (base.divisors[i + 1] != 0) CHECK(base.divisors[i] % base.divisors[i + 1] == 0);
    mpz_class prod = 1;
    for (const auto& d : base.divisors) prod *= d;
    CHECK(prod == abs(testutil::Z(testutil::det_ll(to_ll(m)))));
    CHECK(base.left * m * base.right == [&] {
      IntMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = base.divisors[i];
      return d;
    }());
    for (int s = 0; s < 20; ++s) {
      IntMatrix scrambled = random_unimodular(rng, n) * m * random_unimodular(rng, n);
      CHECK(snf(scrambled).divisors == base.divisors);
    }
  }
}

TEST_CASE("snf of diagonal examples") {
  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}).divisors == std::vector<mpz_class>{6, 1});
  CHECK(snf(IntMatrix{{2, 0}, {0, 4}}).divisors == std::vector<mpz_class>{4, 2});
  CHECK(snf(IntMatrix{{1, 2}, {2, 4}}).divisors == std::vector<mpz_class>{0, 1});
}

TEST_CASE("kernel basis columns are annihilated") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    IntMatrix m = random_matrix(rng, 2, 4, -5, 5);
    const IntMatrix k = kernel_basis(m);
    CHECK(k.cols() == 4 - rank(m));
    const IntMatrix z = m * k;
    for (const auto& v : z.data()) CHECK(v == 0);
  }
}

TEST_CASE("determinant matches an independent elimination") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 4, 4, -9, 9);
    CHECK(det(m) == testutil::Z(testutil::det_ll(to_ll(m))));
  }
}

TEST_CASE("rational inverse") {
  const RatMatrix m{{2, 1}, {1, 1}};
  const RatMatrix inv = inverse(m);
  CHECK(m * inv == RatMatrix{{1, 0}, {0, 1}});
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("solve_in_lattice") {
  const IntMatrix h = hnf(IntMatrix{{2, 0}, {1, 3}}).hnf;
  std::vector<mpz_class> x;
  CHECK(solve_in_lattice(h, {4, 5}, &x));
  CHECK_FALSE(solve_in_lattice(h, {1, 0}));
}

TEST_CASE("principal log inverts the matrix exponential") {
  const RealMatrix a{{Real(0.3, 128), Real(-0.2, 128)}, {Real(0.1, 128), Real(0.05, 128)}};
  const RealMatrix back = principal_log(matrix_exp(a));
  CHECK(frobenius_norm(back - a).to_double() < 1e-25);
  const RealMatrix neg{{Real(-1L, 128), Real(0L, 128)}, {Real(0L, 128), Real(2L, 128)}};
  CHECK_THROWS_AS(principal_log(neg), Error);
}
