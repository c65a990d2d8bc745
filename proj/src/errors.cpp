#include "wcvariant/errors.hpp"

namespace wcv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::InvalidGear: return "InvalidGear";
    case ErrorKind::ZeroFrictionLimit: return "ZeroFrictionLimit";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::EmptyCatalog: return "EmptyCatalog";
    case ErrorKind::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DuplicateName: return "DuplicateName";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace wcv
