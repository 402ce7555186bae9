#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nfq/ideal.hpp"
#include "nfq/numberfield.hpp"

namespace nfq {

/// The prime set S together with the field and its embeddings.
struct SContext {
  NumberField field;
  std::vector<PrimeIdeal> primes;
  EmbeddingData emb;
  unsigned precision_bits = kDefaultPrecisionBits;
};

SContext make_context(const NumberField& field, std::vector<PrimeIdeal> primes, unsigned precision_bits);

/// Parses a prime-set description: "p" selects every prime above p, "p:i"
/// the i-th of them (0-based, in prime_less order).
std::vector<PrimeIdeal> parse_prime_set(const NumberField& field, const std::vector<std::string>& items);

/// Lattice in E; rows of `basis` are basis vectors in Minkowski coordinates.
struct ELattice {
  RealMatrix basis;
  std::optional<GroupPoint> provenance;
  unsigned precision_bits = kDefaultPrecisionBits;
};

/// log N(P) at the given precision.
Real log_norm(const PrimeIdeal& P, unsigned precision_bits);

/// sum_j v_j log N(p_j): the log-norm that phi(y) carries at a point of G.
Real valuation_log_norm(const SContext& ctx, const std::vector<long>& v);

/// Minkowski basis of the exact fractional ideal prod p_j^(-v_j).
ELattice ideal_lattice(const SContext& ctx, const std::vector<long>& v);

/// f_c'(y, v) = phi(y) * O * prod p_j^(-v_j). The last log coordinate of y is
/// completed so that phi(y) has norm prod N(p_j)^(v_j).
ELattice oracle_lattice(const SContext& ctx, const GroupPoint& point);

/// Multiplies a Minkowski-coordinate basis by phi values, one per place.
RealMatrix scale_by_places(const NumberField& field, const RealMatrix& basis, const std::vector<Complex>& values);

struct LLLResult {
  RealMatrix reduced;  // = transform * input
  IntMatrix transform;
};

/// LLL reduction of the rows of `basis` with parameter delta.
LLLResult lll_reduce(const RealMatrix& basis, double delta = 0.75);

struct LatticeComparison {
  bool equal = false;
  Real residual;      // ||B1 - T B2||_F / ||B1||_F after rounding T
  mpz_class det_t;    // det of the rounded transform
};

/// Solves B1 = T B2, rounds T to integers and checks |det T| = 1 exactly and
/// the relative residual against `tolerance`.
LatticeComparison compare_lattices(const RealMatrix& b1, const RealMatrix& b2, const Real& tolerance);

/// Upper bound on the geodesic distance: min ||log((U B')^-1 B)||_F over
/// signed permutations times single elementary operations, both bases LLL
/// reduced. Throws kMath when no candidate has a principal logarithm.
Real dist_g_upper(const ELattice& l, const ELattice& lp);

/// Point of G for an S-unit: log|sigma_j| at the first n1+n2-1 places, sign
/// bits, arguments / 2pi, valuations. Throws kVerification for non-S-units.
GroupPoint image_in_group(const SContext& ctx, const FieldElement& s_unit);

/// ||a|| of a point of G: u completed with weighted trace zero, mu bits as
/// 0/1, theta wrapped into [-1/2, 1/2). Valuations are excluded.
Real group_norm(const SContext& ctx, const GroupPoint& a);

GroupPoint point_difference(const GroupPoint& y, const GroupPoint& x);

struct QuotientDivisors {
  GroupPoint a;                   // y - x without its valuations
  std::vector<mpz_class> d_list;  // SNF divisors of d * J, descending
  mpz_class d;                    // denominator of J
  FractionalIdeal quotient;       // J = prod p_j^(-(v'_j - v_j))
};

QuotientDivisors quotient_elementary_divisors(const SContext& ctx, const GroupPoint& x, const GroupPoint& y);

/// ||a|| + sum_j log d_j + n log d.
Real dist_ideal(const SContext& ctx, const GroupPoint& x, const GroupPoint& y);

/// min over c in {0} and +-image(candidate) of ||a|| + sum_j |w_j| log N(p_j)
/// where (a, w) = y - x - c.
Real dist_quotient_group(const SContext& ctx, const GroupPoint& x, const GroupPoint& y,
                         const std::vector<FieldElement>& unit_candidates);

struct PeriodicityResult {
  bool periodic = false;
  std::vector<long> valuations_used;
  LatticeComparison comparison;
};

/// Compares f_c'(x) with f_c'(x + image(s_unit)). A supplied `valuations`
/// vector replaces the true valuations of the S-unit in the shift.
PeriodicityResult check_periodicity(const SContext& ctx, const GroupPoint& x, const FieldElement& s_unit,
                                    const std::optional<std::vector<long>>& valuations = std::nullopt);

/// Shortest LLL-reduced dual vector divided by 2^((n-1)/2).
Real dual_lambda1_lower(const ELattice& l);

// ---------------------------------------------------------------------------
// Seeded randomized checks

/// mt19937_64; uniform reals as (x >> 11) * 2^-53.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed);
  double uniform();
  long uniform_int(long lo, long hi);  // inclusive
  int bit();

 private:
  std::mt19937_64 engine_;
};

/// u uniform in [-1, 1], theta uniform, mu uniform bits, valuations in {-2..2}.
GroupPoint random_point(const SContext& ctx, TrialRng& rng);

struct TrialFailure {
  std::uint64_t seed_offset = 0;
  std::string reason;
};

struct LemmaReport {
  std::string lemma;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<Real> ratios;           // by trial index, skipped trials omitted
  std::vector<std::uint64_t> ratio_trial;
  Real max_ratio;
  Real median_ratio;
  std::string predicted_bound_shape;
  Real predicted_bound_value;         // shape instantiated with unit constants
  // verify_lemma2 only.
  std::size_t pure_u_trials = 0;
  Real pure_u_max_deviation;          // max |ratio - 1| over pure-u trials
  std::size_t chain_checked = 0;
  std::vector<TrialFailure> failures;
  bool passed() const { return failures.empty(); }
};

LemmaReport verify_lemma1(const SContext& ctx, std::size_t trials, std::uint64_t seed);
LemmaReport verify_lemma2(const SContext& ctx, std::size_t trials, std::uint64_t seed);

}  // namespace nfq
