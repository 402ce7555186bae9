#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nfq/elattice.hpp"
#include "nfq/error.hpp"
#include "nfq/report.hpp"
#include "test_util.hpp"

using namespace nfq;

namespace {

SContext context(const std::string& name, const std::vector<std::string>& primes, unsigned prec = 128) {
  const NumberField k = testutil::field(name);
  return make_context(k, parse_prime_set(k, primes), prec);
}

double d(const Real& x) { return x.to_double(); }

// Shortest nonzero vector among small integer combinations of the rows.
double brute_shortest(const RealMatrix& b, int range) {
  const std::size_t n = b.rows();
  std::vector<int> c(n, -range);
  double best = INFINITY;
  while (true) {
    bool nonzero = false;
    for (int x : c) nonzero |= x != 0;
    if (nonzero) {
      double s = 0;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        double v = 0;
        for (std::size_t i = 0; i < n; ++i) v += c[i] * d(b(i, j));
        s += v * v;
      }
      best = std::min(best, std::sqrt(s));
    }
    std::size_t k = 0;
    while (k < n && ++c[k] > range) c[k++] = -range;
    if (k == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("ideal lattice covolume for Q(i)") {
  const SContext ctx = context("qi", {"5:0"});
  CHECK(std::fabs(std::fabs(d(det(ideal_lattice(ctx, {1}).basis))) - 0.4) < 1e-30);
  CHECK(std::fabs(std::fabs(d(det(ideal_lattice(ctx, {-1}).basis))) - 10.0) < 1e-28);
  CHECK(std::fabs(std::fabs(d(det(ideal_lattice(ctx, {0}).basis))) - 2.0) < 1e-30);
}

TEST_CASE("oracle lattice covolume is sqrt|disc|") {
  for (const char* name : testutil::kShipped) {
    const FieldBundle b = testutil::bundle(name);
    const SContext ctx = make_context(b.field, parse_prime_set(b.field, b.s_primes), 128);
    TrialRng rng(3);
    for (int t = 0; t < 5; ++t) {
      const ELattice l = oracle_lattice(ctx, random_point(ctx, rng));
      const double expect = std::sqrt(std::fabs(b.field.field_disc.get_d()));
      CHECK(std::fabs(std::fabs(d(det(l.basis))) - expect) / expect < 1e-25);
    }
  }
}

TEST_CASE("periodicity under S-units") {
  const SContext q2 = context("qsqrt2", {});
  TrialRng rng(5);
  const GroupPoint x = random_point(q2, rng);
  CHECK(check_periodicity(q2, x, FieldElement{{1, 1}}).periodic);
  CHECK(check_periodicity(q2, x, FieldElement{{-1, 0}}).periodic);

  const SContext qi = context("qi", {"5:0"});
  const GroupPoint y = random_point(qi, rng);
  const PeriodicityResult ok = check_periodicity(qi, y, FieldElement{{2, 1}});
  CHECK(ok.periodic);
  CHECK(ok.valuations_used == std::vector<long>{1});
  CHECK(abs(ok.comparison.det_t) == 1);
  CHECK_FALSE(check_periodicity(qi, y, FieldElement{{2, 1}}, std::vector<long>{0}).periodic);
  CHECK_FALSE(check_periodicity(qi, y, FieldElement{{2, 1}}, std::vector<long>{2}).periodic);

  try {
    check_periodicity(qi, y, FieldElement{{3, 0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kVerification);
  }
}

TEST_CASE("a translation in u alone is not a period") {
  const SContext q2 = context("qsqrt2", {});
  TrialRng rng(9);
  const GroupPoint x = random_point(q2, rng);
  GroupPoint y = x;
  y.u[0] += Real(0.3, 128);
  const auto cmp = compare_lattices(oracle_lattice(q2, x).basis, oracle_lattice(q2, y).basis, two_pow_neg(32, 128));
  CHECK_FALSE(cmp.equal);
}

TEST_CASE("image of an S-unit") {
  const SContext qi = context("qi", {"5:0"});
  const GroupPoint p = image_in_group(qi, FieldElement{{2, 1}});
  CHECK(p.u.empty());
  CHECK(p.valuations == std::vector<long>{1});
  CHECK(std::fabs(d(p.theta[0]) - std::atan2(1.0, 2.0) / (2 * M_PI)) < 1e-15);
  const SContext q2 = context("qsqrt2", {});
  const GroupPoint e = image_in_group(q2, FieldElement{{1, 1}});
  const EmbeddingData& emb = q2.emb;
  const double first = d(emb.real_roots[0]);  // -sqrt 2
  CHECK(std::fabs(d(e.u[0]) - std::log(std::fabs(1 + first))) < 1e-15);
  CHECK(e.mu[0] == (1 + first < 0 ? 1 : 0));
}

TEST_CASE("dist_ideal on pure valuation shifts") {
  const SContext qi = context("qi", {"5:0"});
  TrialRng rng(2);
  const GroupPoint x = random_point(qi, rng);
  CHECK(d(dist_ideal(qi, x, x)) == 0);
  GroupPoint down = x, up = x;
  down.valuations[0] -= 1;
  up.valuations[0] += 1;
  CHECK(std::fabs(d(dist_ideal(qi, x, down)) - std::log(5.0)) < 1e-14);
  CHECK(std::fabs(d(dist_ideal(qi, x, up)) - 3 * std::log(5.0)) < 1e-14);
  const QuotientDivisors q = quotient_elementary_divisors(qi, x, up);
  CHECK(q.d == 5);
  CHECK(q.d_list == std::vector<mpz_class>{5, 1});
  CHECK(std::fabs(d(dist_quotient_group(qi, x, up, {})) - std::log(5.0)) < 1e-14);
}

TEST_CASE("dist_quotient_group with unit candidates") {
  const SContext q2 = context("qsqrt2", {});
  TrialRng rng(4);
  const GroupPoint x = random_point(q2, rng);
  const GroupPoint shifted = add_points(x, image_in_group(q2, FieldElement{{1, 1}}));
  const double without = d(dist_quotient_group(q2, x, shifted, {}));
  const double with = d(dist_quotient_group(q2, x, shifted, {FieldElement{{1, 1}}}));
  CHECK(without > 0.5);
  CHECK(with < 1e-25);
}

TEST_CASE("LLL output is reduced and spans the same lattice") {
  const RealMatrix b{{Real(1L, 128), Real(0L, 128), Real(0L, 128)},
                     {Real(97L, 128), Real(1L, 128), Real(0L, 128)},
                     {Real(41L, 128), Real(59L, 128), Real(1L, 128)}};
  const LLLResult r = lll_reduce(b);
  CHECK(abs(det(r.transform)) == 1);
  CHECK(frobenius_norm(r.reduced - to_real(r.transform, 128) * b).to_double() < 1e-25);
  // Size reduction and the Lovasz condition, from a fresh Gram-Schmidt.
  const std::size_t n = 3;
  std::vector<std::vector<double>> bs(n, std::vector<double>(n));
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0));
  std::vector<double> bb(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c) bs[i][c] = d(r.reduced(i, c));
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0;
      for (std::size_t c = 0; c < n; ++c) dot += d(r.reduced(i, c)) * bs[j][c];
      mu[i][j] = dot / bb[j];
      for (std::size_t c = 0; c < n; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    bb[i] = 0;
    for (double v : bs[i]) bb[i] += v * v;
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) CHECK(std::fabs(mu[i][j]) <= 0.5 + 1e-12);
    CHECK(bb[i] >= (0.75 - mu[i][i - 1] * mu[i][i - 1]) * bb[i - 1] - 1e-9);
  }
}

TEST_CASE("compare_lattices") {
  const RealMatrix b{{Real(1.5, 128), Real(0.25, 128)}, {Real(-0.5, 128), Real(2L, 128)}};
  const IntMatrix u{{2, 1}, {1, 1}};
  const auto same = compare_lattices(to_real(u, 128) * b, b, two_pow_neg(32, 128));
  CHECK(same.equal);
  CHECK(same.det_t == 1);
  const IntMatrix v{{2, 0}, {0, 1}};
  CHECK_FALSE(compare_lattices(to_real(v, 128) * b, b, two_pow_neg(32, 128)).equal);
  CHECK_FALSE(compare_lattices(scale(b, Real(1.001, 128)), b, two_pow_neg(32, 128)).equal);
}

TEST_CASE("dist_g_upper basic properties") {
  const SContext ctx = context("cubic2", {"5"});
  TrialRng rng(8);
  const ELattice a = oracle_lattice(ctx, random_point(ctx, rng));
  const ELattice b = oracle_lattice(ctx, random_point(ctx, rng));
  CHECK(d(dist_g_upper(a, a)) < 1e-25);
  const double ab = d(dist_g_upper(a, b)), ba = d(dist_g_upper(b, a));
  CHECK(std::isfinite(ab));
  CHECK(std::fabs(ab - ba) < 1e-12 * std::max(1.0, ab));
  // Same lattice, different basis.
  const IntMatrix u{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  const ELattice a2{to_real(u, 128) * a.basis, std::nullopt, 128};
  CHECK(d(dist_g_upper(a, a2)) < 1e-25);
}

TEST_CASE("dual lambda1 lower bound") {
  for (const char* name : {"qi", "qsqrt2", "cubic2"}) {
    const FieldBundle b = testutil::bundle(name);
    const SContext ctx = make_context(b.field, parse_prime_set(b.field, b.s_primes), 128);
    TrialRng rng(6);
    const ELattice l = oracle_lattice(ctx, random_point(ctx, rng));
    const double lower = d(dual_lambda1_lower(l));
    const double actual = brute_shortest(inverse(l.basis).transpose(), 4);
    CHECK(lower > 0);
    CHECK(lower <= actual + 1e-12);
  }
}

TEST_CASE("prime set syntax") {
  const NumberField k = testutil::field("qi");
  CHECK(parse_prime_set(k, {"5"}).size() == 2);
  CHECK(parse_prime_set(k, {"5:1", "2"}).size() == 2);
  CHECK_THROWS_AS(parse_prime_set(k, {"5:2"}), Error);
  CHECK_THROWS_AS(parse_prime_set(k, {"x"}), Error);
  CHECK_THROWS_AS(make_context(k, parse_prime_set(k, {"5", "5:0"}), 128), Error);
}

TEST_CASE("trial generator is the documented mt19937_64 mapping") {
  TrialRng a(42), b(42);
  std::mt19937_64 ref(42);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == static_cast<double>(ref() >> 11) * 0x1.0p-53);
    CHECK(x == b.uniform());
  }
}

TEST_CASE("lemma reports") {
  const SContext q2 = context("qsqrt2", {"7"});
  const LemmaReport r2 = verify_lemma2(q2, 80, 1);
  CHECK(r2.passed());
  CHECK(r2.pure_u_trials > 0);
  CHECK(d(r2.pure_u_max_deviation) <= std::ldexp(1.0, -32));
  CHECK(r2.chain_checked == r2.evaluated);
  for (const auto& x : r2.ratios) CHECK(std::isfinite(d(x)));

  const LemmaReport r1 = verify_lemma1(q2, 30, 1);
  CHECK(r1.passed());
  CHECK(r1.skipped >= 1);  // trial 0 compares a point with itself
  CHECK(r1.evaluated + r1.skipped + r1.failures.size() == 30);
  CHECK(lemma_to_json(r1) == lemma_to_json(verify_lemma1(q2, 30, 1)));
  CHECK(lemma_to_json(r1) != lemma_to_json(verify_lemma1(q2, 30, 2)));
  CHECK_THROWS_AS(verify_lemma2(q2, 0, 1), Error);
}
