#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specsmooth {

enum class ErrorCode {
  invalid_argument = 1,
  invalid_state = 2,
  numerical_failure = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error(ErrorCode::invalid_state, what) {}
};

/// Raised when an iterative method fails; `index` identifies the offending
/// eigenpair (or is npos when not applicable).
class NumericalFailure : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit NumericalFailure(const std::string& what, std::size_t index = npos)
      : Error(ErrorCode::numerical_failure, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace specsmooth
