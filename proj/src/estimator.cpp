#include "nfq/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "nfq/arith.hpp"
#include "nfq/error.hpp"

namespace nfq {

LogBase parse_log_base(const std::string& text) {
  if (text == "e") return LogBase::kE;
  if (text == "2") return LogBase::kTwo;
  if (text == "10") return LogBase::kTen;
  fail(ErrorKind::kInvalidInput, "norm log base must be e, 2 or 10, got \"" + text + "\"");
}

std::string log_base_name(LogBase base) {
  switch (base) {
    case LogBase::kE: return "e";
    case LogBase::kTwo: return "2";
    case LogBase::kTen: return "10";
  }
  return "e";
}

void CostModel::validate() const {
  for (double c : {c_deg5, c_deg4_disc, c_deg4_s, c_tau, c_pip, c_cgp, c_lip})
    if (!(c > 0) || !std::isfinite(c)) fail(ErrorKind::kInvalidInput, "cost model constants must be positive");
  if (amplification < 1) fail(ErrorKind::kInvalidInput, "amplification constant must be a positive integer");
}

void HSPOracleParams::validate(long amplification) const {
  if (!(delta > 0 && delta < 0.5)) fail(ErrorKind::kInvalidInput, "delta must lie in (0, 1/2)");
  if (!(eta > 0)) fail(ErrorKind::kInvalidInput, "eta must be positive");
  if (!(epsilon > 0 && epsilon < 1)) fail(ErrorKind::kInvalidInput, "epsilon must lie in (0, 1)");
  if (!(std::pow(epsilon, static_cast<double>(amplification)) < 0.25))
    fail(ErrorKind::kInvalidInput, "epsilon^c must be below 1/4");
  if (!(lambda1_star_lower > 0)) fail(ErrorKind::kInvalidInput, "lambda1_star_lower must be positive");
  if (!std::isfinite(log2_a) || !(r >= 0)) fail(ErrorKind::kInvalidInput, "bad Lipschitz constant or threshold");
}

double log2_of(const mpz_class& x) {
  if (sgn(x) <= 0) fail(ErrorKind::kInvalidInput, "log2 of a nonpositive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const mpq_class& x) { return log2_of(mpz_class(x.get_num())) - log2_of(mpz_class(x.get_den())); }

namespace {

double log2_abs_disc(const NumberField& field) { return log2_of(mpz_class(abs(field.field_disc))); }

double log2_inv_tau(double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) fail(ErrorKind::kInvalidInput, "tau must be positive");
  return std::max(0.0, -std::log2(tau));
}

void add_term(ResourceEstimate& e, const std::string& name, double value) {
  e.terms.emplace_back(name, value);
}

void close(ResourceEstimate& e) {
  e.total = 0;
  for (const auto& [name, value] : e.terms) e.total += value;
}

double norm_log(double x, LogBase base) {
  switch (base) {
    case LogBase::kE: return std::log(x);
    case LogBase::kTwo: return std::log2(x);
    case LogBase::kTen: return std::log10(x);
  }
  return std::log(x);
}

}  // namespace

double lip_log_bound(const NumberField& field, const std::vector<PrimeIdeal>& S, const CostModel& model) {
  model.validate();
  const double m = field.unit_rank;
  double sum = 0;
  for (const auto& P : S) sum += log2_of(P.norm);
  return model.c_lip * (m * m + m * log2_abs_disc(field) + m * sum);
}

double estimate_Q(long m, double lip_log, const HSPOracleParams& params, const CostModel& model) {
  model.validate();
  params.validate(model.amplification);
  if (m < 0) fail(ErrorKind::kInvalidInput, "unit rank must be nonnegative");
  double first = 0;
  if (m > 0) first = static_cast<double>(m) * std::log2(static_cast<double>(m) * std::log2(1.0 / params.eta));
  const double amplified = lip_log + std::log2(static_cast<double>(model.amplification));
  return first + amplified + std::log2(1.0 / (params.eta * params.delta * params.lambda1_star_lower));
}

SUnitEstimate estimate_sunit(const NumberField& field, const std::vector<PrimeIdeal>& S, double tau,
                             const CostModel& model) {
  model.validate();
  const double lt = log2_inv_tau(tau);
  const double ld = log2_abs_disc(field);
  double sum = 0, mx = 0;
  for (const auto& P : S) {
    const double l = log2_of(P.norm);
    sum += l;
    mx = std::max(mx, l);
  }

  SUnitEstimate out;
  const double m = field.unit_rank;
  auto& a = out.m_form;
  a.formula_id = S.empty() ? "unit_m_form" : "sunit_m_form";
  a.inputs = {"m", field.unit_rank, ld, sum, lt, {}};
  add_term(a, "m^5", model.c_deg5 * std::pow(m, 5));
  add_term(a, "m^4*log2|disc|", model.c_deg4_disc * std::pow(m, 4) * ld);
  if (!S.empty()) add_term(a, "m^4*sum_j log2 N(p_j)", model.c_deg4_s * std::pow(m, 4) * sum);
  add_term(a, "m*log2(1/tau)", model.c_tau * m * lt);
  close(a);

  const double n = field.degree;
  auto& b = out.n_form;
  b.formula_id = S.empty() ? "unit_n_form" : "sunit_n_form";
  b.inputs = {"n", field.degree, ld, sum, lt, {{"s_size", static_cast<double>(S.size())}, {"max_log2_norm", mx}}};
  add_term(b, "n^5", model.c_deg5 * std::pow(n, 5));
  add_term(b, "n^4*log2|disc|", model.c_deg4_disc * std::pow(n, 4) * ld);
  if (!S.empty()) add_term(b, "n^4*|S|*max_j log2 N(p_j)", model.c_deg4_s * std::pow(n, 4) * static_cast<double>(S.size()) * mx);
  add_term(b, "n*log2(1/tau)", model.c_tau * n * lt);
  close(b);
  return out;
}

SUnitEstimate estimate_unit(const NumberField& field, double tau, const CostModel& model) {
  return estimate_sunit(field, {}, tau, model);
}

SCGPReport build_scgp(const NumberField& field, LogBase base) {
  const mpz_class ad = abs(field.field_disc);
  if (ad < 2) fail(ErrorKind::kInvalidInput, "|disc| must be at least 2");
  SCGPReport r;
  r.log_base = base;
  const double l = norm_log(ad.get_d(), base);
  r.norm_bound = 48.0 * l * l;
  const auto limit = static_cast<std::uint64_t>(std::floor(r.norm_bound));
  r.rational_primes = primes_up_to(limit);
  for (std::uint64_t p : r.rational_primes) {
    std::vector<PrimeIdeal> above;
    try {
      above = primes_above(field, mpz_class(static_cast<unsigned long>(p)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUnsupported) throw;
      r.skipped_index_divisors.push_back(p);
      continue;
    }
    for (auto& P : above)
      if (P.norm.get_d() <= r.norm_bound) r.prime_ideals.push_back(std::move(P));
  }
  std::sort(r.prime_ideals.begin(), r.prime_ideals.end(), prime_less);
  r.count = r.prime_ideals.size();
  r.prime_power_estimate = r.norm_bound / std::log(r.norm_bound);
  return r;
}

PrimePowerCount prime_power_count(std::uint64_t x) {
  if (x < 2) fail(ErrorKind::kInvalidInput, "prime_power_count needs x >= 2");
  PrimePowerCount out;
  for (std::uint64_t p : primes_up_to(x)) {
    // p^k <= x without overflow
    for (std::uint64_t q = p;; q *= p) {
      ++out.count;
      if (q > x / p) break;
    }
  }
  const double xd = static_cast<double>(x);
  out.ratio = static_cast<double>(out.count) * std::log(xd) / xd;
  return out;
}

CGPEstimate estimate_cgp(const NumberField& field, double tau, const CostModel& model) {
  model.validate();
  const mpz_class ad = abs(field.field_disc);
  if (ad < 3) fail(ErrorKind::kInvalidInput, "|disc| must be at least 3 for loglog|disc|");
  CGPEstimate out;
  const double ld = log2_abs_disc(field);
  const double lld = std::log2(ld);
  if (!(lld > 0)) fail(ErrorKind::kInvalidInput, "loglog|disc| is not positive");
  const double lt = log2_inv_tau(tau);
  const double n = field.degree;
  auto& f = out.formula;
  f.formula_id = "cgp_formula";
  f.inputs = {"n", field.degree, ld, 0, lt, {{"log2_log2_disc", lld}}};
  add_term(f, "n^5", model.c_deg5 * std::pow(n, 5));
  add_term(f, "n^4*(log2|disc|)^4/log2 log2|disc|", model.c_cgp * std::pow(n, 4) * std::pow(ld, 4) / lld);
  add_term(f, "n*log2(1/tau)", model.c_tau * n * lt);
  close(f);
  out.scgp = build_scgp(field, model.norm_log_base);
  out.actual = estimate_sunit(field, out.scgp.prime_ideals, tau, model);
  out.actual.m_form.formula_id = "cgp_actual_m_form";
  out.actual.n_form.formula_id = "cgp_actual_n_form";
  return out;
}

PIPEstimate estimate_pip(const NumberField& field, const FractionalIdeal& ideal, double tau, const CostModel& model,
                         std::uint64_t effort) {
  model.validate();
  PIPEstimate out;
  out.factorization = factor_ideal(field, ideal, effort);
  std::vector<PrimeIdeal> support;
  for (const auto& [P, k] : out.factorization.factors) {
    support.push_back(P);
    out.sum_log2_norm_support += log2_of(P.norm);
  }
  // N(dI) = det of the integral basis; N(dO) = d^n.
  out.log2_norm_dI = log2_of(mpz_class(abs(det(ideal.basis))));
  out.log2_norm_dO = static_cast<double>(field.degree) * log2_of(ideal.denominator);
  out.support_within_norm = out.sum_log2_norm_support <= out.log2_norm_dI + out.log2_norm_dO + 1e-9;

  out.estimate = estimate_sunit(field, support, tau, model);
  const double factoring = model.c_pip * (out.log2_norm_dI + out.log2_norm_dO);
  for (ResourceEstimate* e : {&out.estimate.m_form, &out.estimate.n_form}) {
    e->formula_id = e == &out.estimate.m_form ? "pip_m_form" : "pip_n_form";
    e->inputs.extra["log2_norm_dI"] = out.log2_norm_dI;
    e->inputs.extra["log2_norm_dO"] = out.log2_norm_dO;
    add_term(*e, "factoring log2 N(dI) + log2 N(dO)", factoring);
    close(*e);
  }
  return out;
}

std::vector<mpz_class> class_group_structure(const IntMatrix& valuation_relations) {
  if (valuation_relations.rows() == 0 || valuation_relations.cols() == 0)
    fail(ErrorKind::kInvalidInput, "class_group_structure: empty relation matrix");
  const std::size_t k = valuation_relations.cols();
  std::vector<mpz_class> divisors = snf(valuation_relations).divisors;
  std::vector<mpz_class> out(k > divisors.size() ? k - divisors.size() : 0, mpz_class(0));
  for (const auto& d : divisors)
    if (d != 1) out.push_back(abs(d));
  return out;
}

}  // namespace nfq
