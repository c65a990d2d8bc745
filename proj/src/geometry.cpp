#include "wcvariant/geometry.hpp"

#include <cmath>
#include <string>

#include "wcvariant/errors.hpp"

namespace wcv {

void CurveFrame::validate() const {
  if (radius_m && !(std::isfinite(*radius_m) && *radius_m > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "curve radius must be positive, got " + std::to_string(*radius_m));
  }
  if (!(std::isfinite(speed_mps) && speed_mps >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "speed must be non-negative, got " + std::to_string(speed_mps));
  }
}

SteeringGeometry steering_geometry(const CurveFrame& frame, double l_fa_m, double l_ra_m) {
  frame.validate();
  if (!(l_fa_m > 0.0) || !(l_ra_m > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "axle distances must be positive");
  }
  if (frame.is_straight()) {
    return SteeringGeometry{};
  }

  const double radius = *frame.radius_m;
  if (radius <= l_ra_m) {
    throw Error(ErrorKind::DegenerateGeometry,
                "curve radius " + std::to_string(radius) + " m does not exceed l_ra " + std::to_string(l_ra_m) + " m");
  }

  const double wheelbase = l_fa_m + l_ra_m;
  // Distance from the curve centre to the rear axle.
  const double r_rear = std::sqrt(radius * radius - l_ra_m * l_ra_m);

  SteeringGeometry g;
  g.delta_rad = std::atan2(wheelbase, r_rear);
  g.beta_rad = std::atan2(l_ra_m, r_rear);
  g.yaw_rate_radps = frame.speed_mps / radius;

  const double hyp_delta = std::hypot(wheelbase, r_rear);
  g.sin_delta = wheelbase / hyp_delta;
  g.cos_delta = r_rear / hyp_delta;
  g.sin_beta = l_ra_m / radius;
  g.cos_beta = r_rear / radius;
  return g;
}

}  // namespace wcv
