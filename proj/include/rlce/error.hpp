#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlce {

enum class ErrorCode {
  InvalidInput = 1,  // malformed files, bad arguments
  OutOfRange = 2,    // positions or lengths outside the text
  Overflow = 3,      // lengths or exponents exceed 64 bits
  Internal = 4,      // a construction invariant did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Invariant checks stay on in release builds; they are all O(1) or amortized
// into work the caller already does.
#define RLCE_ENSURE(cond, msg)                                                  \
  do {                                                                          \
    if (!(cond)) ::rlce::fail(::rlce::ErrorCode::Internal, std::string(msg));   \
  } while (0)

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "length overflow");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "length overflow");
  return r;
}

}  // namespace rlce
