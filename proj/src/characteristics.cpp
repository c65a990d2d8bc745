#include "wcvariant/characteristics.hpp"

#include <optional>

#include "wcvariant/errors.hpp"

namespace wcv {

namespace {

// Largest total ratio: first present gear, or the fixed ratio of dedicated engines.
int launch_gear(const VehicleVariant& variant) {
  const auto gears = present_gears(variant);
  return gears.empty() ? 0 : gears.front();
}

}  // namespace

double p_mu_axle(const AxleForces& forces) {
  if (forces.f_mu_n == 0.0) {
    throw Error(ErrorKind::ZeroFrictionLimit, "friction limit is zero");
  }
  return (forces.f_perp_n * forces.f_perp_n + forces.f_par_n * forces.f_par_n) / (forces.f_mu_n * forces.f_mu_n);
}

MuPotential loss_of_traction_assessment(const VehicleVariant& variant, const Scenario& scenario,
                                        LateralModel model) {
  scenario.validate();
  if (scenario.frame.is_straight()) {
    throw Error(ErrorKind::InvalidParameter, "loss-of-traction assessment needs a curved scenario");
  }
  validate(variant);

  MuPotential result;
  result.gear = launch_gear(variant);
  const auto forces = compute_axle_forces(variant, scenario.frame, FrictionContext{scenario.mu}, result.gear, model);
  result.forces_fa = forces.fa;
  result.forces_ra = forces.ra;
  result.p_mu_fa = p_mu_axle(forces.fa);
  result.p_mu_ra = p_mu_axle(forces.ra);
  return result;
}

AxlePair p_acc_components(const VehicleVariant& variant, int gear, const FrictionContext& ctx) {
  if (!(ctx.mu > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "friction coefficient must be positive");
  }
  const AxlePair torque = axle_torques(variant, gear);
  const double base = variant.wheelbase_m() / (variant.r_dyn_m * ctx.mu * ctx.g_mps2 * variant.m_veh_kg);
  return {torque.fa * base / variant.l_ra_m, torque.ra * base / variant.l_fa_m};
}

AccPotential acceleration_assessment(const VehicleVariant& variant, const FrictionContext& ctx) {
  validate(variant);

  auto evaluate = [&](int gear) {
    const AxlePair p = p_acc_components(variant, gear, ctx);
    AccPotential a;
    a.gear = gear;
    a.p_acc_fa = p.fa;
    a.p_acc_ra = p.ra;
    a.p_acc_total = p.fa + p.ra;
    a.p_mu_fa = p.fa * p.fa;
    a.p_mu_ra = p.ra * p.ra;
    a.feasible = p.fa < 1.0 && p.ra < 1.0;
    return a;
  };

  if (!variant.has_single_engine()) {
    return evaluate(0);
  }

  const auto gears = present_gears(variant);
  std::optional<AccPotential> best;
  for (int gear : gears) {
    AccPotential candidate = evaluate(gear);
    if (candidate.feasible && (!best || candidate.p_acc_total > best->p_acc_total)) {
      best = candidate;
    }
  }
  if (best) return *best;
  // Nothing keeps traction: report the smallest ratio, flagged.
  return evaluate(gears.back());
}

}  // namespace wcv
