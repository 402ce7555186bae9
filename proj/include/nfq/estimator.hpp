#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nfq/ideal.hpp"
#include "nfq/numberfield.hpp"

namespace nfq {

enum class LogBase { kE, kTwo, kTen };

LogBase parse_log_base(const std::string& text);
std::string log_base_name(LogBase base);

/// Leading constants of the asymptotic bounds. All default to 1.
struct CostModel {
  double c_deg5 = 1;        // m^5 / n^5
  double c_deg4_disc = 1;   // m^4 log|disc|
  double c_deg4_s = 1;      // m^4 sum log N(p)
  double c_tau = 1;         // m log(1/tau)
  double c_pip = 1;         // factoring register
  double c_cgp = 1;         // (log|disc|)^4 / loglog|disc|
  double c_lip = 1;         // log Lipschitz bound
  long amplification = 2;   // tensor power c with eps^c < 1/4
  LogBase norm_log_base = LogBase::kE;  // base of log inside 48 (log|disc|)^2

  void validate() const;
};

inline constexpr const char* kSurrogateLabel = "upper-bound surrogate (unit constants)";

struct EstimateInputs {
  std::string degree_symbol;  // "m" or "n"
  long degree_value = 0;
  double log2_disc = 0;
  double sum_log2_norm = 0;
  double log2_inv_tau = 0;
  std::map<std::string, double> extra;
};

struct ResourceEstimate {
  std::string formula_id;
  std::vector<std::pair<std::string, double>> terms;
  double total = 0;
  EstimateInputs inputs;
  std::string label = kSurrogateLabel;
};

/// Both variants of the S-unit bound: sum form in m and the |S| max form in n.
struct SUnitEstimate {
  ResourceEstimate m_form;
  ResourceEstimate n_form;
};

struct HSPOracleParams {
  double log2_a = 0;
  double r = 0;
  double epsilon = 0.4;
  double eta = 0.25;
  double delta = 0.25;
  double lambda1_star_lower = 1;

  void validate(long amplification) const;
};

struct SCGPReport {
  double norm_bound = 0;
  LogBase log_base = LogBase::kE;
  std::vector<std::uint64_t> rational_primes;  // every prime <= floor(norm_bound)
  std::vector<PrimeIdeal> prime_ideals;
  std::size_t count = 0;
  double prime_power_estimate = 0;  // x / ln x at x = norm_bound
  std::vector<std::uint64_t> skipped_index_divisors;
};

struct PrimePowerCount {
  std::uint64_t count = 0;
  double ratio = 0;  // count * ln x / x
};

struct CGPEstimate {
  ResourceEstimate formula;
  SCGPReport scgp;
  SUnitEstimate actual;  // S-unit bound over the enumerated set
};

struct PIPEstimate {
  Factorization factorization;
  double log2_norm_dI = 0;
  double log2_norm_dO = 0;
  double sum_log2_norm_support = 0;
  bool support_within_norm = false;  // sum_j log N(p_j) <= log N(dI) + log N(dO)
  SUnitEstimate estimate;            // S-unit bound over the support plus factoring term
};

/// log2 of a positive integer or rational, exact-magnitude safe for large values.
double log2_of(const mpz_class& x);
double log2_of(const mpq_class& x);

double lip_log_bound(const NumberField& field, const std::vector<PrimeIdeal>& S, const CostModel& model = {});

double estimate_Q(long m, double lip_log, const HSPOracleParams& params, const CostModel& model = {});

SUnitEstimate estimate_sunit(const NumberField& field, const std::vector<PrimeIdeal>& S, double tau,
                             const CostModel& model = {});
SUnitEstimate estimate_unit(const NumberField& field, double tau, const CostModel& model = {});

SCGPReport build_scgp(const NumberField& field, LogBase base = LogBase::kE);

PrimePowerCount prime_power_count(std::uint64_t x);

CGPEstimate estimate_cgp(const NumberField& field, double tau, const CostModel& model = {});

PIPEstimate estimate_pip(const NumberField& field, const FractionalIdeal& ideal, double tau,
                         const CostModel& model = {}, std::uint64_t effort = kDefaultFactorEffort);

/// Elementary divisors of Z^k / (row span of relations), descending, 1s
/// stripped; a free factor shows up as 0.
std::vector<mpz_class> class_group_structure(const IntMatrix& valuation_relations);

}  // namespace nfq
