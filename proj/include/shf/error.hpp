#pragma once

#include <stdexcept>
#include <string>

namespace shf {

enum class ErrorCode : int {
  kInvalidArgument = 1,
  kInfeasible = 2,
  kSolverFailure = 3,
  kIo = 4,
  kConfig = 5,
};

// Every failure raised by the library carries one of the codes above so that
// the C boundary can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace shf
