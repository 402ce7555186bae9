#include "nfq/elattice.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfq/error.hpp"

namespace nfq {

SContext make_context(const NumberField& field, std::vector<PrimeIdeal> primes, unsigned precision_bits) {
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (same_prime(primes[i], primes[j])) fail(ErrorKind::kInvalidInput, "S contains " + prime_label(primes[i]) + " twice");
  SContext ctx;
  ctx.field = field;
  ctx.primes = std::move(primes);
  ctx.precision_bits = precision_bits;
  ctx.emb = embeddings(field, precision_bits);
  return ctx;
}

std::vector<PrimeIdeal> parse_prime_set(const NumberField& field, const std::vector<std::string>& items) {
  std::vector<PrimeIdeal> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    mpz_class p;
    if (p.set_str(item.substr(0, colon), 10) != 0) fail(ErrorKind::kInvalidInput, "prime set: bad entry \"" + item + "\"");
    auto above = primes_above(field, p);
    if (colon == std::string::npos) {
      for (auto& P : above) out.push_back(std::move(P));
      continue;
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(item.substr(colon + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidInput, "prime set: bad index in \"" + item + "\"");
    }
    if (idx >= above.size()) fail(ErrorKind::kInvalidInput, "prime set: only " + std::to_string(above.size()) + " primes above " + p.get_str());
    out.push_back(above[idx]);
  }
  return out;
}

Real log_norm(const PrimeIdeal& P, unsigned precision_bits) { return log(Real(P.norm, precision_bits)); }

Real valuation_log_norm(const SContext& ctx, const std::vector<long>& v) {
  if (v.size() != ctx.primes.size()) fail(ErrorKind::kInvalidInput, "valuation vector length differs from |S|");
  Real acc(ctx.precision_bits);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) acc += log_norm(ctx.primes[j], ctx.precision_bits) * v[j];
  return acc;
}

namespace {

RealMatrix ideal_minkowski(const SContext& ctx, const FractionalIdeal& J) {
  const unsigned prec = ctx.precision_bits;
  RealMatrix coords = to_real(J.basis.transpose(), prec);
  RealMatrix b = coords * ctx.emb.minkowski;
  const Real d(J.denominator, prec);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= d;
  return b;
}

Real tolerance_for(unsigned prec) { return two_pow_neg(prec / 4, prec); }

std::vector<std::vector<long>> signed_permutations(std::size_t n) {
  std::vector<std::vector<long>> out;  // entry i: +-(index + 1)
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<long> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i & 1) ? -(perm[i] + 1) : perm[i] + 1;
      out.push_back(s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Signed permutations times {identity, I + s e_i e_j^T}.
std::vector<IntMatrix> candidate_transforms(std::size_t n) {
  std::vector<IntMatrix> elems{int_identity(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (long s : {1L, -1L}) {
        IntMatrix e = int_identity(n);
        e(i, j) = s;
        elems.push_back(e);
      }
    }
  std::vector<IntMatrix> out;
  for (const auto& sp : signed_permutations(n)) {
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, static_cast<std::size_t>(std::labs(sp[i]) - 1)) = sp[i] > 0 ? 1 : -1;
    for (const auto& e : elems) out.push_back(p * e);
  }
  return out;
}

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
  return out;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return out;
}

// Frobenius norm of the principal log in double, or infinity.
double screen_log_norm(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) return INFINITY;
  const double scale = m.norm();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lam = es.eigenvalues()(i);
    if (std::abs(lam) <= 1e-12 * scale) return INFINITY;
    if (std::abs(lam.imag()) <= 1e-12 * scale && lam.real() < 0) return INFINITY;
  }
  Eigen::MatrixXd l = m.log();
  const double v = l.norm();
  return std::isfinite(v) ? v : INFINITY;
}

}  // namespace

ELattice ideal_lattice(const SContext& ctx, const std::vector<long>& v) {
  return ELattice{ideal_minkowski(ctx, s_ideal(ctx.field, ctx.primes, v)), std::nullopt, ctx.precision_bits};
}

RealMatrix scale_by_places(const NumberField& field, const RealMatrix& basis, const std::vector<Complex>& values) {
  if (static_cast<int>(values.size()) != field.places()) fail(ErrorKind::kInvalidInput, "one value per place expected");
  RealMatrix out = basis;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (int j = 0; j < field.real_places; ++j) out(r, static_cast<std::size_t>(j)) *= values[static_cast<std::size_t>(j)].re;
    for (int k = 0; k < field.complex_places; ++k) {
      const std::size_t c = static_cast<std::size_t>(field.real_places + 2 * k);
      const Complex& z = values[static_cast<std::size_t>(field.real_places + k)];
      Real x = basis(r, c), y = basis(r, c + 1);
      out(r, c) = x * z.re - y * z.im;
      out(r, c + 1) = x * z.im + y * z.re;
    }
  }
  return out;
}

ELattice oracle_lattice(const SContext& ctx, const GroupPoint& point) {
  if (point.valuations.size() != ctx.primes.size()) fail(ErrorKind::kInvalidInput, "point valuations differ in length from |S|");
  const FractionalIdeal J = s_ideal(ctx.field, ctx.primes, point.valuations);
  const auto phi = phi_map(ctx.field, point, ctx.emb, valuation_log_norm(ctx, point.valuations));
  return ELattice{scale_by_places(ctx.field, ideal_minkowski(ctx, J), phi), point, ctx.precision_bits};
}

LLLResult lll_reduce(const RealMatrix& basis, double delta) {
  const std::size_t n = basis.rows(), dim = basis.cols();
  const unsigned prec = precision_of(basis);
  RealMatrix b = basis;
  IntMatrix u = int_identity(n);
  RealMatrix mu = real_zero(n, n, prec);
  std::vector<Real> bb(n, Real(prec));

  auto dot = [&](const RealMatrix& m1, std::size_t i, const RealMatrix& m2, std::size_t j) {
    Real acc(prec);
    for (std::size_t c = 0; c < dim; ++c) acc += m1(i, c) * m2(j, c);
    return acc;
  };
  auto gso = [&] {
    RealMatrix bs = b;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu(i, j) = dot(b, i, bs, j) / bb[j];
        for (std::size_t c = 0; c < dim; ++c) bs(i, c) -= mu(i, j) * bs(j, c);
      }
      bb[i] = dot(bs, i, bs, i);
      if (bb[i].is_zero()) fail(ErrorKind::kMath, "lll_reduce: basis is not full rank");
    }
  };
  auto sub_row = [&](std::size_t k, std::size_t j, const mpz_class& q) {
    const Real qr(q, prec);
    for (std::size_t c = 0; c < dim; ++c) b(k, c) -= qr * b(j, c);
    for (std::size_t c = 0; c < n; ++c) u(k, c) -= q * u(j, c);
  };

  const Real d(delta, prec);
  gso();
  std::size_t k = 1;
  for (std::size_t iter = 0; k < n; ++iter) {
    if (iter > 100000) fail(ErrorKind::kMath, "lll_reduce: no convergence");
    for (std::size_t jj = k; jj-- > 0;) {
      mpz_class q = mu(k, jj).round_to_integer();
      if (q != 0) {
        sub_row(k, jj, q);
        gso();
      }
    }
    if (bb[k] >= (d - mu(k, k - 1) * mu(k, k - 1)) * bb[k - 1]) {
      ++k;
    } else {
      b.swap_rows(k, k - 1);
      u.swap_rows(k, k - 1);
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return LLLResult{std::move(b), std::move(u)};
}

LatticeComparison compare_lattices(const RealMatrix& b1, const RealMatrix& b2, const Real& tolerance) {
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols()) fail(ErrorKind::kInvalidInput, "compare_lattices: shape mismatch");
  RealMatrix t = b1 * inverse(b2);
  IntMatrix ti(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) ti(i, j) = t(i, j).round_to_integer();
  LatticeComparison out;
  out.det_t = det(ti);
  RealMatrix diff = b1 - to_real(ti, precision_of(b1)) * b2;
  out.residual = frobenius_norm(diff) / frobenius_norm(b1);
  out.equal = abs(out.det_t) == 1 && out.residual < tolerance;
  return out;
}

Real dist_g_upper(const ELattice& l, const ELattice& lp) {
  if (l.basis.rows() != lp.basis.rows() || !l.basis.is_square() || !lp.basis.is_square())
    fail(ErrorKind::kInvalidInput, "dist_g_upper: lattices of different dimension");
  const std::size_t n = l.basis.rows();
  const RealMatrix b = lll_reduce(l.basis).reduced;
  const RealMatrix bp = lll_reduce(lp.basis).reduced;

  const auto candidates = candidate_transforms(n);
  const Eigen::MatrixXd bd = to_eigen(b), bpd = to_eigen(bp);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Eigen::MatrixXd m = (to_eigen(candidates[i]) * bpd).inverse() * bd;
    scored.emplace_back(screen_log_norm(m), i);
  }
  std::stable_sort(scored.begin(), scored.end());

  // Recompute the best few at working precision.
  std::optional<Real> best;
  std::size_t evaluated = 0;
  for (const auto& [score, idx] : scored) {
    if (evaluated >= 3 && best) break;
    if (!std::isfinite(score) && best) break;
    RealMatrix m = inverse(to_real(candidates[idx], precision_of(bp)) * bp) * b;
    try {
      Real v = frobenius_norm(principal_log(m));
      ++evaluated;
      if (!best || v < *best) best = v;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMath) throw;
    }
  }
  if (!best) fail(ErrorKind::kMath, "dist_g_upper: no principal logarithm for any candidate");
  return *best;
}

GroupPoint image_in_group(const SContext& ctx, const FieldElement& s_unit) {
  const SUnitCheck chk = is_s_unit(ctx.field, s_unit, ctx.primes);
  if (!chk.is_s_unit) fail(ErrorKind::kVerification, "element " + elem_to_string(s_unit) + " is not an S-unit");
  const unsigned prec = ctx.precision_bits;
  const auto sigma = embed(ctx.field, ctx.emb, s_unit);
  GroupPoint p = zero_point(ctx.field, ctx.primes.size(), prec);
  for (std::size_t j = 0; j < p.u.size(); ++j) p.u[j] = log(abs(sigma[j]));
  for (int j = 0; j < ctx.field.real_places; ++j) p.mu[static_cast<std::size_t>(j)] = sigma[static_cast<std::size_t>(j)].re.sign() < 0 ? 1 : 0;
  const Real two_pi = pi(prec) * 2L;
  for (int k = 0; k < ctx.field.complex_places; ++k) {
    const Complex& z = sigma[static_cast<std::size_t>(ctx.field.real_places + k)];
    p.theta[static_cast<std::size_t>(k)] = wrap_unit_interval(atan2(z.im, z.re) / two_pi);
  }
  p.valuations = chk.exponents;

  Real weighted(prec);
  for (int j = 0; j < ctx.field.places(); ++j)
    weighted += log(abs(sigma[static_cast<std::size_t>(j)])) * (j < ctx.field.real_places ? 1L : 2L);
  const Real target = valuation_log_norm(ctx, p.valuations);
  if (abs(weighted - target) > tolerance_for(prec) * max(Real(1L, prec), abs(target)))
    fail(ErrorKind::kVerification, "S-unit log embedding disagrees with its norm");
  return p;
}

GroupPoint point_difference(const GroupPoint& y, const GroupPoint& x) { return add_points(y, negate_point(x)); }

Real group_norm(const SContext& ctx, const GroupPoint& a) {
  const unsigned prec = ctx.precision_bits;
  Real acc(prec);
  for (const auto& v : complete_log_vector(ctx.field, a.u, Real(prec))) acc += v * v;
  for (int bit : a.mu) acc += Real(static_cast<long>(bit != 0), prec);
  const Real half(0.5, prec);
  for (const auto& t : a.theta) {
    Real w = wrap_unit_interval(t);
    if (w >= half) w -= Real(1L, prec);
    acc += w * w;
  }
  return sqrt(acc);
}

QuotientDivisors quotient_elementary_divisors(const SContext& ctx, const GroupPoint& x, const GroupPoint& y) {
  if (x.valuations.size() != ctx.primes.size() || y.valuations.size() != ctx.primes.size())
    fail(ErrorKind::kInvalidInput, "point valuations differ in length from |S|");
  std::vector<long> w(ctx.primes.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = y.valuations[j] - x.valuations[j];
  QuotientDivisors out;
  out.quotient = s_ideal(ctx.field, ctx.primes, w);
  out.d = out.quotient.denominator;
  out.d_list = snf(out.quotient.basis).divisors;
  out.a = point_difference(y, x);
  out.a.valuations.clear();
  return out;
}

Real dist_ideal(const SContext& ctx, const GroupPoint& x, const GroupPoint& y) {
  const unsigned prec = ctx.precision_bits;
  const QuotientDivisors q = quotient_elementary_divisors(ctx, x, y);
  Real acc = group_norm(ctx, q.a);
  for (const auto& dj : q.d_list)
    if (dj != 1) acc += log(Real(dj, prec));
  if (q.d != 1) acc += log(Real(q.d, prec)) * static_cast<long>(ctx.field.degree);
  return acc;
}

namespace {

Real quotient_value(const SContext& ctx, const GroupPoint& diff) {
  Real acc = group_norm(ctx, diff);
  for (std::size_t j = 0; j < ctx.primes.size(); ++j)
    if (diff.valuations[j] != 0) acc += log_norm(ctx.primes[j], ctx.precision_bits) * std::labs(diff.valuations[j]);
  return acc;
}

}  // namespace

Real dist_quotient_group(const SContext& ctx, const GroupPoint& x, const GroupPoint& y,
                         const std::vector<FieldElement>& unit_candidates) {
  const GroupPoint diff = point_difference(y, x);
  Real best = quotient_value(ctx, diff);
  for (const auto& c : unit_candidates) {
    const GroupPoint img = image_in_group(ctx, c);
    for (const GroupPoint& shifted : {point_difference(diff, img), add_points(diff, img)}) {
      Real v = quotient_value(ctx, shifted);
      if (v < best) best = v;
    }
  }
  return best;
}

PeriodicityResult check_periodicity(const SContext& ctx, const GroupPoint& x, const FieldElement& s_unit,
                                    const std::optional<std::vector<long>>& valuations) {
  GroupPoint img = image_in_group(ctx, s_unit);
  if (valuations) {
    if (valuations->size() != ctx.primes.size()) fail(ErrorKind::kInvalidInput, "valuation vector length differs from |S|");
    img.valuations = *valuations;
  }
  PeriodicityResult out;
  out.valuations_used = img.valuations;
  const ELattice l1 = oracle_lattice(ctx, x);
  const ELattice l2 = oracle_lattice(ctx, add_points(x, img));
  out.comparison = compare_lattices(l2.basis, l1.basis, tolerance_for(ctx.precision_bits));
  out.periodic = out.comparison.equal;
  return out;
}

Real dual_lambda1_lower(const ELattice& l) {
  const std::size_t n = l.basis.rows();
  const RealMatrix dual = inverse(l.basis).transpose();
  const RealMatrix red = lll_reduce(dual).reduced;
  const unsigned prec = precision_of(red);
  std::optional<Real> shortest;
  for (std::size_t i = 0; i < n; ++i) {
    Real acc(prec);
    for (std::size_t c = 0; c < red.cols(); ++c) acc += red(i, c) * red(i, c);
    Real len = sqrt(acc);
    if (!shortest || len < *shortest) shortest = len;
  }
  // 2^((n-1)/2)
  return *shortest / sqrt(ldexp(Real(1L, prec), static_cast<long>(n) - 1));
}

// ---------------------------------------------------------------------------

TrialRng::TrialRng(std::uint64_t seed) : engine_(seed) {}

double TrialRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

long TrialRng::uniform_int(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

int TrialRng::bit() { return static_cast<int>(engine_() >> 63); }

GroupPoint random_point(const SContext& ctx, TrialRng& rng) {
  const unsigned prec = ctx.precision_bits;
  GroupPoint p = zero_point(ctx.field, ctx.primes.size(), prec);
  for (auto& u : p.u) u = Real(2.0 * rng.uniform() - 1.0, prec);
  for (auto& m : p.mu) m = rng.bit();
  for (auto& t : p.theta) t = Real(rng.uniform(), prec);
  for (auto& v : p.valuations) v = rng.uniform_int(-2, 2);
  return p;
}

namespace {

constexpr double kSkipThreshold = 1e-9;

void finalize(LemmaReport& r, unsigned prec) {
  r.evaluated = r.ratios.size();
  r.max_ratio = Real(prec);
  r.median_ratio = Real(prec);
  if (r.ratios.empty()) return;
  std::vector<Real> sorted = r.ratios;
  std::sort(sorted.begin(), sorted.end(), [](const Real& a, const Real& b) { return a < b; });
  r.max_ratio = sorted.back();
  const std::size_t m = sorted.size() / 2;
  r.median_ratio = sorted.size() % 2 ? sorted[m] : (sorted[m - 1] + sorted[m]) / 2L;
}

void require_trials(std::size_t trials) {
  if (trials < 1) fail(ErrorKind::kInvalidInput, "trials must be >= 1");
}

}  // namespace

LemmaReport verify_lemma1(const SContext& ctx, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const unsigned prec = ctx.precision_bits;
  const long n = ctx.field.degree;
  LemmaReport r;
  r.lemma = "lemma1";
  r.seed = seed;
  r.trials = trials;
  r.predicted_bound_shape = "dist_g <= C * (n^(2n+2) + prod_j N(p_j)^(c_j*n)) * dist, c_j = 1 (unnormalized)";
  Real bound = pow(Real(n, prec), 2 * n + 2);
  Real prod(1L, prec);
  for (const auto& P : ctx.primes) prod *= pow(Real(P.norm, prec), n);
  r.predicted_bound_value = bound + prod;

  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(seed + t);
    const GroupPoint x = random_point(ctx, rng);
    const GroupPoint y = t == 0 ? x : random_point(ctx, rng);
    const Real di = dist_ideal(ctx, x, y);
    if (di.to_double() < kSkipThreshold) {
      ++r.skipped;
      continue;
    }
    try {
      const Real dg = dist_g_upper(oracle_lattice(ctx, x), oracle_lattice(ctx, y));
      const Real ratio = dg / di;
      if (!ratio.is_finite() || ratio.sign() < 0) {
        r.failures.push_back({t, "ratio is not finite and nonnegative"});
        continue;
      }
      r.ratios.push_back(ratio);
      r.ratio_trial.push_back(t);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMath) throw;
      r.failures.push_back({t, e.what()});
    }
  }
  finalize(r, prec);
  return r;
}

LemmaReport verify_lemma2(const SContext& ctx, std::size_t trials, std::uint64_t seed) {
  require_trials(trials);
  const unsigned prec = ctx.precision_bits;
  const long n = ctx.field.degree;
  LemmaReport r;
  r.lemma = "lemma2";
  r.seed = seed;
  r.trials = trials;
  r.predicted_bound_shape =
      "dist <= C * n * dist_G/U(S); chain dist <= ||a|| + n * sum_j c_j log N(p_j), c_j = 2|w_j|";
  r.predicted_bound_value = Real(n, prec);
  r.pure_u_max_deviation = Real(prec);
  const Real pure_tol = two_pow_neg(32, prec);

  for (std::size_t t = 0; t < trials; ++t) {
    TrialRng rng(seed + t);
    const GroupPoint x = random_point(ctx, rng);
    GroupPoint y = x;
    const bool pure_u = t % 4 == 1;
    if (pure_u) {
      for (auto& u : y.u) u += Real(2.0 * rng.uniform() - 1.0, prec);
    } else if (t != 0) {
      y = random_point(ctx, rng);
    }
    const QuotientDivisors q = quotient_elementary_divisors(ctx, x, y);
    const Real di = dist_ideal(ctx, x, y);
    const Real dq = dist_quotient_group(ctx, x, y, {});
    if (dq.to_double() < kSkipThreshold) {
      ++r.skipped;
      continue;
    }
    const Real ratio = di / dq;
    if (!ratio.is_finite() || ratio.sign() < 0) {
      r.failures.push_back({t, "ratio is not finite and nonnegative"});
      continue;
    }
    r.ratios.push_back(ratio);
    r.ratio_trial.push_back(t);

    // dist <= ||a|| + n * sum_j 2|w_j| log N(p_j) with the exact d_j, d.
    Real chain = group_norm(ctx, q.a);
    for (std::size_t j = 0; j < ctx.primes.size(); ++j) {
      const long w = std::labs(y.valuations[j] - x.valuations[j]);
      if (w != 0) chain += log_norm(ctx.primes[j], prec) * (2 * w * n);
    }
    ++r.chain_checked;
    if (di > chain + two_pow_neg(prec / 2, prec) * max(Real(1L, prec), chain))
      r.failures.push_back({t, "exhibited inequality chain violated"});

    if (pure_u) {
      ++r.pure_u_trials;
      const Real dev = abs(ratio - Real(1L, prec));
      if (dev > r.pure_u_max_deviation) r.pure_u_max_deviation = dev;
      if (dev > pure_tol) r.failures.push_back({t, "pure-u translation ratio differs from 1"});
    }
  }
  finalize(r, prec);
  return r;
}

}  // namespace nfq
