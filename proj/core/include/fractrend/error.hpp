#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fractrend {

enum class ErrorCode {
  kIo,               // file missing or unreadable
  kMalformed,        // input present but not parseable
  kUnsupported,      // valid input of a kind this library refuses (color, >8-bit)
  kOutOfBounds,      // rect, center or radius outside the raster
  kInvalidArgument,  // violated precondition on a parameter
  kDegenerate,       // data that admits no fit (constant x, empty set, ...)
  kTooFewSamples,
  kNonConvergence,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. what() carries a one-line message
// without the code prefix; code() is stable for programmatic checks.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fractrend
