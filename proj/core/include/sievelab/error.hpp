#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sievelab {

enum class ErrorKind {
  kInvalidArgument,
  kOutOfRange,
  kBoundaryAmbiguous,
  kPrecisionExhausted,
  kInsufficientData,
  kInsufficientTuples,
  kOverflow,
  kInternal,
  kIo,
};

/// Machine-readable kind name, e.g. "invalid-argument".
std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace sievelab
