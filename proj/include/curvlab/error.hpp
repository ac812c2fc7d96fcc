#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvlab {

enum class ErrorKind {
  dimension_mismatch,
  invalid_pair,
  invalid_argument,
  unsupported_dimension,
  hypothesis_violation,
  invalid_operator,
  validation,
  parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind lets callers (the CLI in
/// particular) map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Compact rendering of a real number for messages.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::invalid_pair: return "invalid pair";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::unsupported_dimension: return "unsupported dimension";
    case ErrorKind::hypothesis_violation: return "hypothesis violation";
    case ErrorKind::invalid_operator: return "invalid operator";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::parse: return "parse error";
  }
  return "error";
}

}  // namespace curvlab
