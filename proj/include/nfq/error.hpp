#pragma once

#include <stdexcept>
#include <string>

namespace nfq {

enum class ErrorKind {
  kInvalidInput,   // malformed documents, violated preconditions
  kMath,           // rank deficiency, no principal logarithm, zero divisors
  kUnsupported,    // index-divisor primes, fields outside the supported range
  kEffort,         // a configured effort bound was exhausted
  kVerification,   // a self-check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::kInvalidInput, what);
}

}  // namespace nfq
