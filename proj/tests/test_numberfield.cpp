#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "nfq/error.hpp"
#include "nfq/numberfield.hpp"
#include "test_util.hpp"

using namespace nfq;

namespace {

poly::ZPoly zp(std::initializer_list<long> c) {
  poly::ZPoly f;
  for (long x : c) f.push_back(x);
  return f;
}

// Sign changes of f on a fine grid.
int real_root_count(const std::vector<double>& coeffs) {
  auto eval = [&](double x) {
    double acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  int count = 0;
  double prev = eval(-20);
  for (double x = -20 + 1e-3; x <= 20; x += 1e-3) {
    const double v = eval(x);
    if ((prev < 0) != (v < 0)) ++count;
    prev = v;
  }
  return count;
}

// Sylvester resultant of f and f' with long double elimination, rounded.
long long sylvester_disc(const std::vector<long long>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  std::vector<long long> df;
  for (int i = 1; i <= n; ++i) df.push_back(i * f[static_cast<std::size_t>(i)]);
  const int m = n - 1, size = n + m;
  std::vector<std::vector<long double>> s(static_cast<std::size_t>(size), std::vector<long double>(static_cast<std::size_t>(size), 0));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + n - i)] = static_cast<long double>(f[static_cast<std::size_t>(i)]);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + m - i)] = static_cast<long double>(df[static_cast<std::size_t>(i)]);
  long double det = 1;
  for (int k = 0; k < size; ++k) {
    int piv = k;
    for (int i = k + 1; i < size; ++i)
      if (std::fabs(s[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) > std::fabs(s[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)])) piv = i;
    if (s[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)] == 0) return 0;
    if (piv != k) {
      std::swap(s[static_cast<std::size_t>(piv)], s[static_cast<std::size_t>(k)]);
      det = -det;
    }
    det *= s[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    for (int i = k + 1; i < size; ++i) {
      const long double fct = s[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / s[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      for (int j = k; j < size; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= fct * s[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
  }
  const long long res = std::llround(det);
  return (n * (n - 1) / 2) % 2 ? -res : res;
}

}  // namespace

TEST_CASE("signature examples") {
  CHECK(signature(zp({1, 0, 1})) == std::pair{0, 1});
  CHECK(signature(zp({-2, 0, 1})) == std::pair{2, 0});
  CHECK(signature(zp({-1, -1, 0, 0, 1})) == std::pair{2, 1});
  CHECK(real_root_count({-1, -1, 0, 0, 1}) == 2);
  CHECK(signature(zp({-2, 0, 0, 1})) == std::pair{1, 1});
  CHECK(real_root_count({-2, 0, 0, 1}) == 1);
}

TEST_CASE("polynomial discriminants agree with the Sylvester determinant") {
  CHECK(poly_discriminant(zp({1, 0, 1})) == -4);
  CHECK(poly_discriminant(zp({-5, 0, 1})) == 20);
  CHECK(poly_discriminant(zp({-2, 0, 1})) == 8);
  CHECK(poly_discriminant(zp({-2, 0, 0, 1})) == -108);
  for (const auto& f : std::vector<std::vector<long long>>{{1, 0, 1}, {-5, 0, 1}, {-2, 0, 0, 1}, {-1, -1, 0, 0, 1}, {3, 1, -2, 1}}) {
    poly::ZPoly g;
    for (long long c : f) g.push_back(static_cast<long>(c));
    CHECK(poly_discriminant(g) == testutil::Z(sylvester_disc(f)));
  }
}

TEST_CASE("field invariants of the shipped fields") {
  for (const char* name : testutil::kShipped) {
    const NumberField k = testutil::field(name);
    CHECK(k.degree == k.real_places + 2 * k.complex_places);
    CHECK(k.unit_rank == k.real_places + k.complex_places - 1);
    CHECK(k.poly_disc == k.index * k.index * k.field_disc);
    CHECK(k.integral_basis(0, 0) == 1);
    for (int j = 1; j < k.degree; ++j) CHECK(k.integral_basis(0, static_cast<std::size_t>(j)) == 0);
  }
  CHECK(testutil::field("qi").field_disc == -4);
  CHECK(testutil::field("qsqrt2").field_disc == 8);
  CHECK(testutil::field("qsqrt5_half").field_disc == 5);
  CHECK(testutil::field("qsqrt5_half").index == 2);
  CHECK(testutil::field("cubic2").field_disc == -108);
}

TEST_CASE("field spec errors") {
  auto rejects = [](const char* text) {
    try {
      parse_field(text);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kInvalidInput;
    }
    return false;
  };
  CHECK(rejects(R"({"coefficients": [1, 0, 2]})"));    // non-monic
  CHECK(rejects(R"({"poly": [3]})"));                   // degree 1
  CHECK(rejects(R"({"poly": [-1, 0]})"));               // x^2 - 1
  CHECK(rejects(R"({"poly": [2, 0, 3, 0]})"));          // (x^2+1)(x^2+2)
  CHECK(rejects(R"({"poly": [-5, 0], "integral_basis": [[1, 0], ["1/3", "1/3"]]})"));
  CHECK(rejects(R"({"poly": [1, 0], "precision_bits": 32})"));
  CHECK(rejects(R"({"poly": [1, 0)"));
  CHECK(parse_field(R"({"poly": [1, 0]})").maximal_order_assumed);
  CHECK_FALSE(testutil::field("qi").maximal_order_assumed);
}

TEST_CASE("Minkowski determinant equals sqrt|disc|") {
  for (const char* name : testutil::kShipped) {
    const NumberField k = testutil::field(name);
    const EmbeddingData emb = embeddings(k, 128);
    const double expect = std::sqrt(std::fabs(k.field_disc.get_d()));
    CHECK(std::fabs(std::fabs(det(emb.minkowski).to_double()) - expect) / expect < 1e-12);
  }
  const EmbeddingData e = embeddings(testutil::field("qi"), 128);
  REQUIRE(e.complex_roots.size() == 1);
  CHECK(std::fabs(e.complex_roots[0].im.to_double() - 1) < 1e-30);
}

TEST_CASE("element norms") {
  const NumberField qi = testutil::field("qi");
  const NumberField q2 = testutil::field("qsqrt2");
  CHECK(elem_norm(qi, elem_from_integer(qi, 1)) == 1);
  CHECK(elem_norm(qi, FieldElement{{2, 1}}) == 5);
  CHECK(elem_norm(q2, FieldElement{{1, 1}}) == -1);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int t = 0; t < 50; ++t) {
    const long a = d(rng), b = d(rng);
    CHECK(elem_norm(qi, FieldElement{{a, b}}) == a * a + b * b);
    CHECK(elem_norm(q2, FieldElement{{a, b}}) == a * a - 2 * b * b);
  }
}

TEST_CASE("norm is multiplicative and inverses are exact") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> d(-9, 9);
  for (const char* name : testutil::kShipped) {
    const NumberField k = testutil::field(name);
    for (int t = 0; t < 15; ++t) {
      FieldElement x, y;
      for (int i = 0; i < k.degree; ++i) {
        x.coords.push_back(mpq_class(d(rng), 1 + std::abs(d(rng))));
        x.coords.back().canonicalize();
        y.coords.push_back(d(rng));
      }
      if (elem_is_zero(x) || elem_is_zero(y)) continue;
      CHECK(elem_norm(k, elem_mul(k, x, y)) == elem_norm(k, x) * elem_norm(k, y));
      CHECK(elem_mul(k, x, elem_inv(k, x)) == elem_from_integer(k, 1));
    }
  }
  const NumberField qi = testutil::field("qi");
  const FieldElement t = elem_generator(qi);
  CHECK(elem_mul(qi, t, t) == elem_from_integer(qi, -1));
  CHECK_THROWS_AS(elem_inv(qi, elem_from_integer(qi, 0)), Error);
}

TEST_CASE("element embeddings multiply to the norm") {
  const NumberField k = testutil::field("cubic2");
  const EmbeddingData emb = embeddings(k, 128);
  const FieldElement x{{3, -1, 2}};
  const auto s = embed(k, emb, x);
  std::complex<double> prod = s[0].re.to_double();
  const std::complex<double> z(s[1].re.to_double(), s[1].im.to_double());
  prod *= z * std::conj(z);
  CHECK(std::fabs(prod.real() - elem_norm(k, x).get_d()) < 1e-9);
}

TEST_CASE("phi map special values") {
  const NumberField q2 = testutil::field("qsqrt2");
  const EmbeddingData e2 = embeddings(q2, 128);
  GroupPoint zero = zero_point(q2, 0, 128);
  for (const auto& z : phi_map(q2, zero, e2)) {
    CHECK(std::fabs(z.re.to_double() - 1) < 1e-30);
    CHECK(z.im.to_double() == 0);
  }
  GroupPoint sign = zero;
  sign.mu[0] = 1;
  CHECK(std::fabs(phi_map(q2, sign, e2)[0].re.to_double() + 1) < 1e-30);

  const NumberField qi = testutil::field("qi");
  const EmbeddingData ei = embeddings(qi, 128);
  GroupPoint quarter = zero_point(qi, 0, 128);
  quarter.theta[0] = Real(0.25, 128);
  const Complex v = phi_map(qi, quarter, ei)[0];
  CHECK(std::fabs(v.re.to_double()) < 1e-30);
  CHECK(std::fabs(v.im.to_double() - 1) < 1e-30);
}

TEST_CASE("phi is a homomorphism") {
  const NumberField k = testutil::field("cubic2");
  const EmbeddingData emb = embeddings(k, 128);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    GroupPoint a = zero_point(k, 0, 128), b = a;
    a.u[0] = Real(u(rng), 128);
    b.u[0] = Real(u(rng), 128);
    a.mu[0] = t % 2;
    b.mu[0] = (t / 2) % 2;
    a.theta[0] = Real(std::fabs(u(rng)), 128);
    b.theta[0] = Real(std::fabs(u(rng)), 128);
    const auto pa = phi_map(k, a, emb), pb = phi_map(k, b, emb), pab = phi_map(k, add_points(a, b), emb);
    for (std::size_t j = 0; j < pa.size(); ++j) {
      const Complex prod = pa[j] * pb[j];
      CHECK(abs(prod - pab[j]).to_double() < 1e-25);
    }
  }
}

TEST_CASE("fundamental units of real quadratic fields") {
  auto check = [](long d, long x, long y, int norm) {
    const QuadraticUnit u = fundamental_unit_real_quadratic(d);
    CHECK(u.x == x);
    CHECK(u.y == y);
    CHECK(u.norm == norm);
    // (x^2 - d y^2) / 4 = norm
    CHECK(u.x * u.x - d * u.y * u.y == 4 * norm);
  };
  check(2, 2, 2, -1);   // 1 + sqrt 2
  check(5, 1, 1, -1);   // (1 + sqrt 5) / 2
  check(3, 4, 2, 1);    // 2 + sqrt 3
  check(13, 3, 1, -1);  // (3 + sqrt 13) / 2
  CHECK_THROWS_AS(fundamental_unit_real_quadratic(12), Error);
  for (const char* name : {"qsqrt2", "qsqrt3", "qsqrt5", "qsqrt5_half"}) {
    const NumberField k = testutil::field(name);
    const FieldElement e = quadratic_unit_element(k, fundamental_unit_real_quadratic(quadratic_radicand(k)));
    CHECK(abs(elem_norm(k, e)) == 1);
    CHECK(elem_is_integral(e));
  }
}
