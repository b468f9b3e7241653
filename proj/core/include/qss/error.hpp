#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qss {

enum class ErrorKind {
  invalid_argument,
  shape_mismatch,
  format,
  io,
  overflow,
  not_converged,
  unsupported,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind is
/// machine-readable so front ends can map it to exit codes and reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace qss
