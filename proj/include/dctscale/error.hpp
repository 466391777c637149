#pragma once

#include <stdexcept>
#include <string>

namespace dctscale {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Singular,
  NotFound,
  Checksum,
  Parse,
  Overflow,
  Io,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto dcs_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dctscale
