#pragma once

#include "wcvariant/forces.hpp"
#include "wcvariant/scenario.hpp"
#include "wcvariant/vehicle.hpp"

namespace wcv {

/// Friction-circle utilization (F_perp^2 + F_par^2) / F_mu^2. Values above 1
/// mean the axle has lost traction. Throws ZeroFrictionLimit when F_mu = 0.
double p_mu_axle(const AxleForces& forces);

struct MuPotential {
  double p_mu_fa = 0.0;
  double p_mu_ra = 0.0;
  int gear = 1;
  AxleForces forces_fa;
  AxleForces forces_ra;
};

/// Friction-circle utilization of both axles at the largest total ratio
/// (first gear, or the fixed ratio of dedicated engines) in a curved scenario.
MuPotential loss_of_traction_assessment(const VehicleVariant& variant, const Scenario& scenario,
                                        LateralModel model);

/// Normalized acceleration potential per axle, T_X l / (r_dyn mu g m l_opposite).
AxlePair p_acc_components(const VehicleVariant& variant, int gear, const FrictionContext& ctx);

struct AccPotential {
  double p_acc_fa = 0.0;
  double p_acc_ra = 0.0;
  double p_acc_total = 0.0;
  double p_mu_fa = 0.0;  // p_acc_fa^2, straight ahead
  double p_mu_ra = 0.0;
  int gear = 1;  // 0 for dedicated engines
  bool feasible = false;
};

/// Gear sweep maximizing p_acc_total subject to p_acc_fa < 1 and p_acc_ra < 1.
/// Equal totals resolve to the lower gear. When no gear keeps traction the
/// smallest-ratio gear is reported with feasible = false.
AccPotential acceleration_assessment(const VehicleVariant& variant, const FrictionContext& ctx);

}  // namespace wcv
