#include "nfq/real.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nfq {

namespace {

unsigned clamp_precision(unsigned bits) { return std::max(bits, Real::kMinPrecision); }

unsigned min_prec(const Real& a, const Real& b) { return std::min(a.precision(), b.precision()); }

}  // namespace

Real::Real(unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, unsigned precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("not a decimal number: " + decimal);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs and leave `other` as a valid minimal value.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, kMinPrecision);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(unsigned precision_bits) const {
  Real r(precision_bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

mpz_class Real::round_to_integer() const {
  if (!is_finite()) throw std::domain_error("cannot round a non-finite value");
  mpz_class z;
  Real tmp(precision());
  mpfr_round(tmp.value_, value_);
  mpfr_get_z(z.get_mpz_t(), tmp.value_, MPFR_RNDN);
  return z;
}

mpz_class Real::floor_to_integer() const {
  if (!is_finite()) throw std::domain_error("cannot round a non-finite value");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDD);
  return z;
}

std::string Real::to_string(int significant_digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, value_);
  return buf.data();
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(min_prec(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

#define NFQ_UNARY(name, fn)                      \
  Real name(const Real& x) {                     \
    Real r(x.precision());                       \
    fn(r.get(), x.get(), MPFR_RNDN);             \
    return r;                                    \
  }

NFQ_UNARY(abs, mpfr_abs)
NFQ_UNARY(sqrt, mpfr_sqrt)
NFQ_UNARY(exp, mpfr_exp)
NFQ_UNARY(log, mpfr_log)
NFQ_UNARY(log2, mpfr_log2)
NFQ_UNARY(sin, mpfr_sin)
NFQ_UNARY(cos, mpfr_cos)

#undef NFQ_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(std::min(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real pi(unsigned precision_bits) {
  Real r(precision_bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace nfq
