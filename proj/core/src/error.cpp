#include "qss/error.hpp"

#include <iostream>
#include <mutex>
#include <string>

#include "qss/log.hpp"

namespace qss {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::format: return "format";
    case ErrorKind::io: return "io";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::not_converged: return "not_converged";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h;
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  handler_slot() = std::move(handler);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) {
    handler_slot()(message);
  } else {
    std::cerr << "qss warning: " << message << '\n';
  }
}

}  // namespace qss
