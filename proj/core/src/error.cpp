#include "sievelab/error.hpp"

namespace sievelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kOutOfRange: return "out-of-range";
    case ErrorKind::kBoundaryAmbiguous: return "boundary-ambiguous";
    case ErrorKind::kPrecisionExhausted: return "precision-exhausted";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kInsufficientTuples: return "insufficient-tuples";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kInternal: return "internal-error";
    case ErrorKind::kIo: return "io-error";
  }
  return "unknown";
}

}  // namespace sievelab
