#include <algorithm>
#include <map>

#include "nfq/error.hpp"
#include "nfq/ideal.hpp"

namespace nfq {

namespace {

constexpr long kMaxBruteforceDisc = 10000;

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class fmod(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// u*a + v*b = g = gcd(a, b) >= 0.
void ext_gcd(const mpz_class& a, const mpz_class& b, mpz_class& u, mpz_class& v, mpz_class& g) {
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

class FormGroup {
 public:
  explicit FormGroup(const mpz_class& disc) : disc_(disc), forms_(reduced_forms(disc)) {
    for (std::size_t i = 0; i < forms_.size(); ++i) index_[{forms_[i].a, forms_[i].b}] = i;
    identity_ = find(identity_form(disc));
  }

  std::size_t size() const { return forms_.size(); }
  std::size_t identity() const { return identity_; }

  std::size_t find(const QuadForm& f) const {
    QuadForm r = reduce_form(f);
    auto it = index_.find({r.a, r.b});
    if (it == index_.end()) fail(ErrorKind::kMath, "form is not among the reduced forms");
    return it->second;
  }

  std::size_t mul(std::size_t i, std::size_t j) {
    auto key = std::make_pair(std::min(i, j), std::max(i, j));
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    std::size_t r = find(compose_forms(forms_[i], forms_[j]));
    table_[key] = r;
    return r;
  }

 private:
  mpz_class disc_;
  std::vector<QuadForm> forms_;
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table_;
  std::size_t identity_ = 0;
};

mpz_class supported_disc(const NumberField& field) {
  if (field.degree != 2 || field.field_disc >= 0) fail(ErrorKind::kUnsupported, "class group oracle needs an imaginary quadratic field");
  if (abs(field.field_disc) > kMaxBruteforceDisc) fail(ErrorKind::kUnsupported, "class group oracle limited to |disc| <= 10^4");
  return field.field_disc;
}

}  // namespace

mpz_class form_discriminant(const QuadForm& f) { return f.b * f.b - 4 * f.a * f.c; }

QuadForm reduce_form(QuadForm f) {
  if (f.a <= 0) fail(ErrorKind::kInvalidInput, "reduce_form: form is not positive definite");
  const mpz_class disc = form_discriminant(f);
  auto normalize = [&] {
    if (-f.a < f.b && f.b <= f.a) return;
    mpz_class q = fdiv(f.a - f.b, 2 * f.a);
    f.b += 2 * f.a * q;
    f.c = (f.b * f.b - disc) / (4 * f.a);
  };
  for (;;) {
    normalize();
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadForm compose_forms(const QuadForm& f1_in, const QuadForm& f2_in) {
  QuadForm f1 = f1_in, f2 = f2_in;
  const mpz_class disc = form_discriminant(f1);
  if (form_discriminant(f2) != disc) fail(ErrorKind::kInvalidInput, "compose_forms: discriminants differ");
  if (f1.a > f2.a) std::swap(f1, f2);
  const mpz_class s = (f1.b + f2.b) / 2;
  const mpz_class n = f2.b - s;
  mpz_class y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    mpz_class u, v;
    ext_gcd(f2.a, f1.a, u, v, d);
    y1 = u;
  }
  mpz_class x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    ext_gcd(s, d, x2, y2, d1);
    y2 = -y2;
  }
  const mpz_class v1 = f1.a / d1, v2 = f2.a / d1;
  const mpz_class r = fmod(y1 * y2 * n - x2 * f2.c, v1);
  QuadForm out;
  out.b = f2.b + 2 * v2 * r;
  out.a = v1 * v2;
  out.c = (out.b * out.b - disc) / (4 * out.a);
  if (form_discriminant(out) != disc) fail(ErrorKind::kMath, "compose_forms: discriminant not preserved");
  return reduce_form(out);
}

QuadForm identity_form(const mpz_class& disc) {
  QuadForm f;
  f.a = 1;
  f.b = fmod(disc, 2);
  f.c = (f.b * f.b - disc) / 4;
  return f;
}

std::vector<QuadForm> reduced_forms(const mpz_class& disc) {
  if (disc >= 0) fail(ErrorKind::kInvalidInput, "reduced_forms: discriminant must be negative");
  const mpz_class r4 = fmod(disc, 4);
  if (r4 != 0 && r4 != 1) fail(ErrorKind::kInvalidInput, "reduced_forms: discriminant must be 0 or 1 mod 4");
  std::vector<QuadForm> out;
  for (mpz_class a = 1; 3 * a * a <= -disc; ++a) {
    for (mpz_class b = -a + 1; b <= a; ++b) {
      mpz_class num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      mpz_class c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

QuadForm prime_class(const NumberField& field, const PrimeIdeal& P) {
  const mpz_class disc = supported_disc(field);
  if (field.index != 1) fail(ErrorKind::kUnsupported, "prime_class needs the power basis as integral basis");
  if (P.f != 1) return identity_form(disc);
  const mpz_class a1 = field.defining_poly[1];
  const mpz_class r = fmod(-P.generator_poly[0], P.p);
  QuadForm q;
  q.a = P.p;
  q.b = a1 + 2 * r;
  q.c = (q.b * q.b - disc) / (4 * q.a);
  if (form_discriminant(q) != disc) fail(ErrorKind::kMath, "prime_class: form has the wrong discriminant");
  return reduce_form(q);
}

std::vector<mpz_class> class_group_bruteforce(const NumberField& field) {
  FormGroup group(supported_disc(field));
  const std::size_t h = group.size();

  // Greedy generating set.
  std::vector<std::size_t> gens;
  std::vector<bool> reached(h, false);
  reached[group.identity()] = true;
  std::size_t reached_count = 1;
  for (std::size_t g = 0; g < h && reached_count < h; ++g) {
    if (reached[g]) continue;
    gens.push_back(g);
    std::vector<std::size_t> frontier;
    for (std::size_t x = 0; x < h; ++x)
      if (reached[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t x : frontier)
        for (std::size_t s : gens) {
          std::size_t y = group.mul(x, s);
          if (!reached[y]) {
            reached[y] = true;
            ++reached_count;
            next.push_back(y);
          }
        }
      frontier = std::move(next);
    }
  }

  // Cayley presentation: e_id = 0 and e_x + e_g - e_(xg) = 0.
  IntMatrix rel(1 + h * gens.size(), h);
  rel(0, group.identity()) = 1;
  std::size_t row = 1;
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t g : gens) {
      rel(row, x) += 1;
      rel(row, g) += 1;
      rel(row, group.mul(x, g)) -= 1;
      ++row;
    }
  std::vector<mpz_class> out;
  for (const auto& d : snf(rel).divisors)
    if (d != 1) out.push_back(d);
  return out;
}

IntMatrix class_group_relations(const NumberField& field, const std::vector<PrimeIdeal>& primes) {
  FormGroup group(supported_disc(field));
  const std::size_t k = primes.size();
  IntMatrix rel(k, k);
  // Coordinates of every element of the subgroup generated so far.
  std::map<std::size_t, std::vector<long>> coords;
  coords[group.identity()] = std::vector<long>(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t g = group.find(prime_class(field, primes[j]));
    std::size_t x = g;
    long t = 1;
    while (!coords.count(x)) {
      x = group.mul(x, g);
      ++t;
    }
    rel(j, j) = t;
    for (std::size_t i = 0; i < j; ++i) rel(j, i) = -coords[x][i];
    std::map<std::size_t, std::vector<long>> grown;
    for (const auto& [h, c] : coords) {
      std::size_t y = h;
      for (long s = 0; s < t; ++s) {
        std::vector<long> cy = c;
        cy[j] = s;
        grown[y] = std::move(cy);
        y = group.mul(y, g);
      }
    }
    coords = std::move(grown);
  }
  return rel;
}

}  // namespace nfq
