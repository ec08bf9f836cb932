#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roadwheel {

enum class ErrorKind {
  OutOfDomain,
  OutOfRange,
  NonPositiveRadius,
  BadParameter,
  ToleranceNotMet,
  RoadAboveAxis,
  RangeExceeded,
  NotRectifiableHere,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::RoadAboveAxis: return "RoadAboveAxis";
    case ErrorKind::RangeExceeded: return "RangeExceeded";
    case ErrorKind::NotRectifiableHere: return "NotRectifiableHere";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace roadwheel
