#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nfq/report.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string field_path(const std::string& name) { return std::string(NFQ_DATA_DIR) + "/fields/" + name + ".json"; }

inline nfq::FieldBundle bundle(const std::string& name) { return nfq::load_field_bundle(read_file(field_path(name))); }
inline nfq::NumberField field(const std::string& name) { return bundle(name).field; }

inline const char* const kShipped[] = {"qi", "qsqrt2", "qsqrt3", "qsqrt5", "qsqrt5_half", "qsqrtm5", "qsqrtm23", "cubic2"};

// Small exact helpers kept separate from the library code paths.
inline mpz_class Z(long long v) { return mpz_class(static_cast<long>(v)); }

inline long long det_ll(std::vector<std::vector<long long>> a) {
  const std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline long long mod_pow(long long b, long long e, long long m) {
  long long r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace testutil
