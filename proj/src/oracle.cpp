#include "wcvariant/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wcvariant/errors.hpp"

namespace wcv {

namespace {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;

Vec2 mul(const Mat2& m, const Vec2& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

double cross_z(const Vec2& r, const Vec2& f) { return r[0] * f[1] - r[1] * f[0]; }

// Planar balances written as rows over the unknowns
// (F_perp_FA, F_perp_RA, R * yaw acceleration) plus a constant term:
//   row . unknowns + constant = 0
struct Row {
  std::array<double, 3> coeff{};
  double constant = 0.0;
};

struct PlanarBalances {
  Row longitudinal;
  Row lateral;
  Row yaw;
};

PlanarBalances assemble_planar(const VehicleVariant& variant, const CurveFrame& frame,
                               const SteeringGeometry& geom, const AxlePair& f_par_n) {
  if (frame.is_straight()) {
    throw Error(ErrorKind::InvalidParameter, "force balance needs a curved frame");
  }
  const double radius = *frame.radius_m;
  const double m = variant.m_veh_kg;
  const double centripetal_acc = frame.speed_mps * frame.speed_mps / radius;

  // Front-axle frame -> body frame, and inertial -> body frame.
  const Mat2 front_to_body{{{geom.cos_delta, -geom.sin_delta}, {geom.sin_delta, geom.cos_delta}}};
  const Mat2 inertial_to_body{{{geom.cos_beta, -geom.sin_beta}, {geom.sin_beta, geom.cos_beta}}};

  // Wheel forces: drive force points along -x of the respective frame.
  const Vec2 front_lateral_unit = mul(front_to_body, {0.0, 1.0});
  const Vec2 front_drive = mul(front_to_body, {-f_par_n.fa, 0.0});
  const Vec2 rear_lateral_unit{0.0, 1.0};
  const Vec2 rear_drive{-f_par_n.ra, 0.0};

  // CG acceleration in the inertial frame is (-R*yaw_acc, -V^2/R).
  const Vec2 acc_per_tangential = mul(inertial_to_body, {-1.0, 0.0});
  const Vec2 acc_centripetal = mul(inertial_to_body, {0.0, -centripetal_acc});

  PlanarBalances p;
  Row* momentum[2] = {&p.longitudinal, &p.lateral};
  for (int k = 0; k < 2; ++k) {
    Row& row = *momentum[k];
    row.coeff[0] = front_lateral_unit[k];
    row.coeff[1] = rear_lateral_unit[k];
    row.coeff[2] = -m * acc_per_tangential[k];
    row.constant = front_drive[k] + rear_drive[k] - m * acc_centripetal[k];
  }

  // Yaw moment about the CG; the point-mass closure makes it vanish.
  const Vec2 front_arm{-variant.l_fa_m, 0.0};
  const Vec2 rear_arm{variant.l_ra_m, 0.0};
  p.yaw.coeff[0] = cross_z(front_arm, front_lateral_unit);
  p.yaw.coeff[1] = cross_z(rear_arm, rear_lateral_unit);
  p.yaw.coeff[2] = 0.0;
  p.yaw.constant = cross_z(front_arm, front_drive) + cross_z(rear_arm, rear_drive);
  return p;
}

double row_value(const Row& row, const std::array<double, 3>& x) {
  return row.coeff[0] * x[0] + row.coeff[1] * x[1] + row.coeff[2] * x[2] + row.constant;
}

double row_scale(const Row& row, const std::array<double, 3>& x) {
  double s = std::abs(row.constant);
  for (int i = 0; i < 3; ++i) s = std::max(s, std::abs(row.coeff[i] * x[i]));
  return s;
}

}  // namespace

ForceBalanceSystem assemble_force_balance(const VehicleVariant& variant, const CurveFrame& frame,
                                          const SteeringGeometry& geom, const AxlePair& f_par_n) {
  const PlanarBalances p = assemble_planar(variant, frame, geom, f_par_n);

  // Eliminate the tangential acceleration from the lateral row.
  const double factor = p.lateral.coeff[2] / p.longitudinal.coeff[2];
  ForceBalanceSystem sys;
  for (int j = 0; j < 2; ++j) {
    sys.a[0][j] = p.lateral.coeff[j] - factor * p.longitudinal.coeff[j];
    sys.a[1][j] = p.yaw.coeff[j];
  }
  sys.b[0] = -(p.lateral.constant - factor * p.longitudinal.constant);
  sys.b[1] = -p.yaw.constant;
  return sys;
}

AxlePair solve_force_balance(const ForceBalanceSystem& system) {
  auto a = system.a;
  auto b = system.b;

  const double norm0 = std::hypot(a[0][0], a[0][1]);
  const double norm1 = std::hypot(a[1][0], a[1][1]);
  if (!(std::abs(system.determinant()) >= 1e-12 * norm0 * norm1) || norm0 == 0.0 || norm1 == 0.0) {
    throw Error(ErrorKind::SingularSystem, "force balance determinant " + std::to_string(system.determinant()));
  }

  if (std::abs(a[1][0]) > std::abs(a[0][0])) {
    std::swap(a[0], a[1]);
    std::swap(b[0], b[1]);
  }
  const double factor = a[1][0] / a[0][0];
  const double a11 = a[1][1] - factor * a[0][1];
  const double b1 = b[1] - factor * b[0];

  AxlePair x;
  x.ra = b1 / a11;
  x.fa = (b[0] - a[0][1] * x.ra) / a[0][0];
  return x;
}

AxlePair oracle_solve_forces(const VehicleVariant& variant, const CurveFrame& frame,
                             const SteeringGeometry& geom, const AxlePair& f_par_n) {
  return solve_force_balance(assemble_force_balance(variant, frame, geom, f_par_n));
}

BalanceResiduals balance_residuals(const VehicleVariant& variant, const CurveFrame& frame,
                                   const SteeringGeometry& geom, const AxlePair& f_par_n,
                                   const AxlePair& f_perp_n) {
  const PlanarBalances p = assemble_planar(variant, frame, geom, f_par_n);

  std::array<double, 3> x{f_perp_n.fa, f_perp_n.ra, 0.0};
  x[2] = -(p.longitudinal.coeff[0] * x[0] + p.longitudinal.coeff[1] * x[1] + p.longitudinal.constant) /
         p.longitudinal.coeff[2];

  BalanceResiduals r;
  r.longitudinal = row_value(p.longitudinal, x);
  r.lateral = row_value(p.lateral, x);
  r.yaw = row_value(p.yaw, x);
  r.scale = std::max({row_scale(p.longitudinal, x), row_scale(p.lateral, x), row_scale(p.yaw, x)});
  return r;
}

}  // namespace wcv
