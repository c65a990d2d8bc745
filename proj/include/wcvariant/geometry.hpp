#pragma once

#include <optional>

namespace wcv {

/// Curve radius and momentary speed of a scenario. A missing radius means
/// straight-ahead driving; no infinite radius is ever formed.
struct CurveFrame {
  std::optional<double> radius_m;
  double speed_mps = 0.0;

  static CurveFrame straight(double speed_mps) { return {std::nullopt, speed_mps}; }
  static CurveFrame curve(double radius_m, double speed_mps) { return {radius_m, speed_mps}; }

  bool is_straight() const { return !radius_m.has_value(); }

  /// Throws InvalidParameter unless radius > 0 (when curved) and speed >= 0.
  void validate() const;

  bool operator==(const CurveFrame&) const = default;
};

/// Stationary-steering angles of the kinematic single-track model.
struct SteeringGeometry {
  double delta_rad = 0.0;  // Ackermann steering angle
  double beta_rad = 0.0;   // side-slip angle at the CG
  double yaw_rate_radps = 0.0;
  double sin_delta = 0.0;
  double cos_delta = 1.0;
  double sin_beta = 0.0;
  double cos_beta = 1.0;
};

/// Ackermann and side-slip angles for a vehicle with CG-to-axle distances
/// l_fa and l_ra following the frame's curve:
///   tan(delta) = l / sqrt(R^2 - l_ra^2),  tan(beta) = l_ra / sqrt(R^2 - l_ra^2)
/// Straight frames yield all-zero angles and yaw rate.
/// Throws DegenerateGeometry when R <= l_ra.
SteeringGeometry steering_geometry(const CurveFrame& frame, double l_fa_m, double l_ra_m);

}  // namespace wcv
