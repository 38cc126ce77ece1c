#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccdec {

/// Index of one basis relation, in [0, rank).
using Color = std::uint32_t;

/// Index of a point of the underlying set, in [0, degree).
using Point = std::uint32_t;

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotSquare,
  NonContiguousColors,
  InvalidDiagonal,            // C1
  InvalidTranspose,           // C2
  InvalidIntersectionNumbers, // C3
  DegreeOverflow,
  NotABijection,
  NotAParabolic,
  HomeMismatch,
  ClosureNotARelation,
  NotCartesian,
  DegreeMismatch,
  NotThick,
  VerificationFailed,
  InvalidGenerator,
  InvalidGroupTable,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Largest degree accepted by constructors. Defaults to 4096; the
/// CCDEC_MAX_DEGREE environment variable overrides it.
std::size_t max_degree();

} // namespace ccdec
