#pragma once

#include "wcvariant/geometry.hpp"
#include "wcvariant/vehicle.hpp"

namespace wcv {

inline constexpr double kGravity = 9.81;  // m/s^2

/// A value per axle.
struct AxlePair {
  double fa = 0.0;
  double ra = 0.0;

  bool operator==(const AxlePair&) const = default;
};

/// Forces at one axle. f_perp keeps its sign; characteristics square it.
struct AxleForces {
  double f_par_n = 0.0;
  double f_perp_n = 0.0;
  double f_n_n = 0.0;
  double f_mu_n = 0.0;
};

struct FrictionContext {
  double mu = 1.0;
  double g_mps2 = kGravity;
};

enum class LateralModel {
  /// Rear axle carries its static share of the centripetal force; the front
  /// share is expressed in the steered-wheel frame.
  Decoupled,
  /// Closed-form solution of the planar momentum and yaw-moment balance.
  SingleTrack,
};

/// Static axle loads: F_N,FA = m g l_ra / l, F_N,RA = m g l_fa / l.
AxlePair static_normal_loads(double m_veh_kg, double l_fa_m, double l_ra_m);

/// Axle torques for the given 1-based gear. Single engine: T_mot * i_gear * i_diff;
/// dedicated engines: T_mot,X * i_X (gear ignored). Throws InvalidGear.
AxlePair axle_torques(const VehicleVariant& variant, int gear);

/// F_par = T / r_dyn per axle.
AxlePair longitudinal_forces(const AxlePair& torques_nm, double r_dyn_m);

AxlePair lateral_forces_decoupled(const VehicleVariant& variant, const CurveFrame& frame,
                                  const SteeringGeometry& geom, double f_par_fa_n);

/// Throws DegenerateGeometry when the common denominator is below 1e-12 * R * l.
AxlePair lateral_forces_single_track(const VehicleVariant& variant, const CurveFrame& frame,
                                     const SteeringGeometry& geom, const AxlePair& f_par_n);

AxlePair friction_limits(const FrictionContext& ctx, const AxlePair& normal_loads_n);

/// Full per-axle force picture for a variant in a scenario at one gear.
struct AxleForcePair {
  AxleForces fa;
  AxleForces ra;
};

AxleForcePair compute_axle_forces(const VehicleVariant& variant, const CurveFrame& frame,
                                  const FrictionContext& ctx, int gear, LateralModel model);

}  // namespace wcv
