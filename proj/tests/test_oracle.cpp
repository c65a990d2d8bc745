#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "wcvariant/errors.hpp"
#include "wcvariant/oracle.hpp"

using namespace wcv;
using namespace wcv::testing;

TEST_CASE("oracle solves the large van loss-of-traction case") {
  const auto& van = fixture_variant("Large European Van RWD");
  const auto frame = loss_scenario().frame;
  const auto g = steering_geometry(frame, van.l_fa_m, van.l_ra_m);
  const AxlePair f_par{0.0, 11439.0 / 0.4015};

  const auto oracle = oracle_solve_forces(van, frame, g, f_par);
  CHECK(oracle.ra == doctest::Approx(-7544.2).epsilon(1e-4));

  const auto closed = lateral_forces_single_track(van, frame, g, f_par);
  CHECK(rel_diff(oracle.fa, closed.fa) <= 1e-9);
  CHECK(rel_diff(oracle.ra, closed.ra) <= 1e-9);

  const auto r = balance_residuals(van, frame, g, f_par, oracle);
  CHECK(std::abs(r.longitudinal) <= 1e-9 * r.scale);
  CHECK(std::abs(r.lateral) <= 1e-9 * r.scale);
  CHECK(std::abs(r.yaw) <= 1e-9 * r.scale);
}

TEST_CASE("homogeneous system at rest") {
  const auto& v = fixture_variant("A-Class Hatchback 2017 FWD");
  const auto frame = CurveFrame::curve(4.0, 0.0);
  const auto g = steering_geometry(frame, v.l_fa_m, v.l_ra_m);
  const auto x = oracle_solve_forces(v, frame, g, {});
  CHECK(x.fa == 0.0);
  CHECK(x.ra == 0.0);
}

TEST_CASE("closed forms agree with the oracle on random configurations") {
  std::mt19937_64 rng(1234567);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 1500; ++i) {
    VehicleVariant v = random_variant(rng);
    v.m_veh_kg = 500.0 + 2500.0 * unit(rng);
    const double radius = std::max(3.0, v.l_ra_m + 0.2) + 97.0 * unit(rng);
    const CurveFrame frame = CurveFrame::curve(radius, 0.5 + 29.5 * unit(rng));
    const auto g = steering_geometry(frame, v.l_fa_m, v.l_ra_m);
    const int gear = present_gears(v)[std::uniform_int_distribution<std::size_t>(0, present_gears(v).size() - 1)(rng)];
    const AxlePair f_par = longitudinal_forces(axle_torques(v, gear), v.r_dyn_m);

    const auto oracle = oracle_solve_forces(v, frame, g, f_par);
    const auto closed = lateral_forces_single_track(v, frame, g, f_par);
    const double scale = std::max(std::abs(oracle.fa), std::abs(oracle.ra));
    CHECK(std::abs(oracle.fa - closed.fa) <= 1e-9 * scale);
    CHECK(std::abs(oracle.ra - closed.ra) <= 1e-9 * scale);

    const auto r = balance_residuals(v, frame, g, f_par, oracle);
    CHECK(std::abs(r.longitudinal) <= 1e-9 * r.scale);
    CHECK(std::abs(r.lateral) <= 1e-9 * r.scale);
    CHECK(std::abs(r.yaw) <= 1e-9 * r.scale);
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("residuals expose a wrong solution") {
  const auto& van = fixture_variant("Large European Van RWD");
  const auto frame = loss_scenario().frame;
  const auto g = steering_geometry(frame, van.l_fa_m, van.l_ra_m);
  const AxlePair f_par{0.0, 28490.66};
  auto x = oracle_solve_forces(van, frame, g, f_par);
  x.ra *= 1.01;
  const auto r = balance_residuals(van, frame, g, f_par, x);
  CHECK(std::abs(r.lateral) + std::abs(r.yaw) > 1e-6 * r.scale);
}

TEST_CASE("singular systems are reported") {
  ForceBalanceSystem sys;
  sys.a = {{{1.0, 2.0}, {2.0, 4.0}}};
  sys.b = {1.0, 1.0};
  try {
    solve_force_balance(sys);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSystem);
  }
}

TEST_CASE("pivoting handles a zero leading coefficient") {
  ForceBalanceSystem sys;
  sys.a = {{{0.0, 2.0}, {3.0, 1.0}}};
  sys.b = {4.0, 5.0};
  const auto x = solve_force_balance(sys);
  CHECK(x.fa == doctest::Approx(1.0));
  CHECK(x.ra == doctest::Approx(2.0));
}
