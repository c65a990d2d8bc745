#include "wcvariant/forces.hpp"

#include <cmath>
#include <string>

#include "wcvariant/errors.hpp"

namespace wcv {

AxlePair static_normal_loads(double m_veh_kg, double l_fa_m, double l_ra_m) {
  if (!(m_veh_kg > 0.0) || !(l_fa_m > 0.0) || !(l_ra_m > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "mass and axle distances must be positive");
  }
  const double weight = m_veh_kg * kGravity;
  const double wheelbase = l_fa_m + l_ra_m;
  return {weight * l_ra_m / wheelbase, weight * l_fa_m / wheelbase};
}

AxlePair axle_torques(const VehicleVariant& variant, int gear) {
  if (const auto* dedicated = std::get_if<DedicatedEngines>(&variant.drivetrain)) {
    return {dedicated->fa.t_mot_nm * dedicated->fa.ratio, dedicated->ra.t_mot_nm * dedicated->ra.ratio};
  }
  const auto& single = std::get<SingleEngine>(variant.drivetrain);
  if (gear < 1 || static_cast<std::size_t>(gear) > single.gear_ratios.size() ||
      single.gear_ratios[static_cast<std::size_t>(gear) - 1] == 0.0) {
    throw Error(ErrorKind::InvalidGear, "variant '" + variant.name + "' has no gear " + std::to_string(gear));
  }
  const double gearbox_torque = single.t_mot_nm * single.gear_ratios[static_cast<std::size_t>(gear) - 1];
  return {gearbox_torque * single.i_diff_fa, gearbox_torque * single.i_diff_ra};
}

AxlePair longitudinal_forces(const AxlePair& torques_nm, double r_dyn_m) {
  if (!(r_dyn_m > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "r_dyn must be positive, got " + std::to_string(r_dyn_m));
  }
  return {torques_nm.fa / r_dyn_m, torques_nm.ra / r_dyn_m};
}

AxlePair lateral_forces_decoupled(const VehicleVariant& variant, const CurveFrame& frame,
                                  const SteeringGeometry& geom, double f_par_fa_n) {
  if (frame.is_straight()) return {};
  const double radius = *frame.radius_m;
  if (radius <= variant.l_ra_m) {
    throw Error(ErrorKind::DegenerateGeometry, "curve radius does not exceed l_ra");
  }
  const double wheelbase = variant.wheelbase_m();
  const double centripetal = variant.m_veh_kg * frame.speed_mps * frame.speed_mps / radius;

  AxlePair f;
  f.ra = centripetal * variant.l_fa_m / wheelbase;
  f.fa = (centripetal * variant.l_ra_m / wheelbase - f_par_fa_n * geom.sin_delta) / geom.cos_delta;
  return f;
}

AxlePair lateral_forces_single_track(const VehicleVariant& variant, const CurveFrame& frame,
                                     const SteeringGeometry& geom, const AxlePair& f_par_n) {
  if (frame.is_straight()) {
    throw Error(ErrorKind::InvalidParameter, "single-track lateral forces need a curved frame");
  }
  const double radius = *frame.radius_m;
  const double l_fa = variant.l_fa_m;
  const double l_ra = variant.l_ra_m;
  const double m = variant.m_veh_kg;
  const double v2 = frame.speed_mps * frame.speed_mps;

  // sin(beta - delta), cos(beta - delta) from the cached values
  const double sin_bmd = geom.sin_beta * geom.cos_delta - geom.cos_beta * geom.sin_delta;
  const double cos_bmd = geom.cos_beta * geom.cos_delta + geom.sin_beta * geom.sin_delta;

  const double denom = radius * (l_fa * geom.cos_beta * geom.cos_delta + l_ra * cos_bmd);
  if (std::abs(denom) < 1e-12 * radius * variant.wheelbase_m()) {
    throw Error(ErrorKind::DegenerateGeometry, "near-singular steering configuration");
  }

  AxlePair f;
  f.fa = (f_par_n.fa * radius * (l_fa * geom.sin_delta * geom.cos_beta - l_ra * sin_bmd) -
          f_par_n.ra * radius * l_ra * geom.sin_beta - v2 * l_ra * m) /
         denom;
  f.ra = -l_fa *
         (f_par_n.fa * radius * geom.sin_beta + f_par_n.ra * radius * geom.sin_beta * geom.cos_delta +
          v2 * m * geom.cos_delta) /
         denom;
  return f;
}

AxlePair friction_limits(const FrictionContext& ctx, const AxlePair& normal_loads_n) {
  return {ctx.mu * normal_loads_n.fa, ctx.mu * normal_loads_n.ra};
}

AxleForcePair compute_axle_forces(const VehicleVariant& variant, const CurveFrame& frame,
                                  const FrictionContext& ctx, int gear, LateralModel model) {
  const SteeringGeometry geom = steering_geometry(frame, variant.l_fa_m, variant.l_ra_m);
  const AxlePair f_par = longitudinal_forces(axle_torques(variant, gear), variant.r_dyn_m);
  const AxlePair normal = static_normal_loads(variant.m_veh_kg, variant.l_fa_m, variant.l_ra_m);
  const AxlePair limit = friction_limits(ctx, normal);

  AxlePair f_perp;
  if (!frame.is_straight()) {
    f_perp = model == LateralModel::Decoupled ? lateral_forces_decoupled(variant, frame, geom, f_par.fa)
                                              : lateral_forces_single_track(variant, frame, geom, f_par);
  }
  return {AxleForces{f_par.fa, f_perp.fa, normal.fa, limit.fa},
          AxleForces{f_par.ra, f_perp.ra, normal.ra, limit.ra}};
}

}  // namespace wcv
