#pragma once

#include <array>

#include "wcvariant/forces.hpp"

namespace wcv {

/// Linear system A x = b in the unknown lateral forces x = (F_perp_FA, F_perp_RA),
/// assembled from the body-frame lateral momentum balance (with the yaw
/// acceleration eliminated through the longitudinal balance) and the yaw
/// moment balance about the CG.
struct ForceBalanceSystem {
  std::array<std::array<double, 2>, 2> a{};
  std::array<double, 2> b{};

  double determinant() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

/// Residuals of the three planar balances (longitudinal momentum, lateral
/// momentum, yaw moment) at a candidate solution, with the yaw acceleration
/// recovered from the longitudinal balance.
struct BalanceResiduals {
  double longitudinal = 0.0;
  double lateral = 0.0;
  double yaw = 0.0;
  double scale = 0.0;  // magnitude of the largest term entering the balances
};

ForceBalanceSystem assemble_force_balance(const VehicleVariant& variant, const CurveFrame& frame,
                                          const SteeringGeometry& geom, const AxlePair& f_par_n);

/// Gaussian elimination with partial pivoting. Throws SingularSystem when
/// |det| < 1e-12 times the product of the row norms.
AxlePair solve_force_balance(const ForceBalanceSystem& system);

AxlePair oracle_solve_forces(const VehicleVariant& variant, const CurveFrame& frame,
                             const SteeringGeometry& geom, const AxlePair& f_par_n);

BalanceResiduals balance_residuals(const VehicleVariant& variant, const CurveFrame& frame,
                                   const SteeringGeometry& geom, const AxlePair& f_par_n,
                                   const AxlePair& f_perp_n);

}  // namespace wcv
