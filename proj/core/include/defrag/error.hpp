#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defrag {

enum class ErrorCode {
  IndexOutOfRange,
  InvalidTag,
  EmptyPattern,
  Overlap,
  SelfOverlap,
  PatternMismatch,
  OutOfBounds,
  DuplicateId,
  UnknownId,
  Parse,
  PreconditionViolated,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/**
 * @brief Error raised by every checked operation of the library
 *
 * The code distinguishes the failure classes callers may want to branch on
 * (for example, an illegal move due to self-overlap versus a pattern mismatch).
 */
class DefragError : public std::runtime_error {
 public:
  DefragError(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace defrag
