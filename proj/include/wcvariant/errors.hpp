#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcv {

enum class ErrorKind {
  InvalidParameter,
  DegenerateGeometry,
  InvalidGear,
  ZeroFrictionLimit,
  SingularSystem,
  EmptyCatalog,
  NoFeasiblePoint,
  ParseError,
  ValidationError,
  DuplicateName,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library surfaces as an Error carrying its kind.
/// what() renders as "<Kind>: <detail>" so it can be printed verbatim as a
/// single-line diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace wcv
