#include "fractrend/error.hpp"

namespace fractrend {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kOutOfBounds: return "out_of_bounds";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kTooFewSamples: return "too_few_samples";
    case ErrorCode::kNonConvergence: return "non_convergence";
  }
  return "unknown";
}

}  // namespace fractrend
