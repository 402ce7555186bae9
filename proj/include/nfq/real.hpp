#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace nfq {

/// Arbitrary-precision binary floating value backed by MPFR.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the smaller precision of the two operands, so a derived quantity never
/// claims more bits than its least precise input.
class Real {
 public:
  static constexpr unsigned kMinPrecision = 64;

  explicit Real(unsigned precision_bits = kMinPrecision);
  Real(double value, unsigned precision_bits);
  Real(long value, unsigned precision_bits);
  Real(int value, unsigned precision_bits) : Real(static_cast<long>(value), precision_bits) {}
  Real(const mpz_class& value, unsigned precision_bits);
  Real(const mpq_class& value, unsigned precision_bits);
  Real(const std::string& decimal, unsigned precision_bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  Real with_precision(unsigned precision_bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Nearest integer (ties away from zero).
  mpz_class round_to_integer() const;
  mpz_class floor_to_integer() const;
  std::string to_string(int significant_digits = 20) const;

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, long n);
Real ldexp(const Real& x, long e);
Real pi(unsigned precision_bits);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// 2^-k at the given precision; used for tolerances.
inline Real two_pow_neg(unsigned k, unsigned precision_bits) { return ldexp(Real(1L, precision_bits), -static_cast<long>(k)); }

}  // namespace nfq
