#pragma once

#include <string>

#include "wcvariant/geometry.hpp"

namespace wcv {

struct Scenario {
  std::string name;
  double mu = 1.0;
  CurveFrame frame;
  std::string exposure_label;  // informational, e.g. "E3"

  /// Throws InvalidParameter unless mu > 0 and the frame is valid.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

constexpr double kph_to_mps(double kph) { return kph / 3.6; }
constexpr double mps_to_kph(double mps) { return mps * 3.6; }

}  // namespace wcv
