#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "wcvariant/analysis.hpp"
#include "wcvariant/errors.hpp"

using namespace wcv;
using namespace wcv::testing;

namespace {

UseCase loss_front() { return {UseCaseKind::LossFront, loss_scenario()}; }
UseCase loss_rear() { return {UseCaseKind::LossRear, loss_scenario()}; }
UseCase no_loss() { return {UseCaseKind::NoLossAccel, accel_scenario()}; }

VehicleVariant dual_engine_base() {
  VehicleVariant v;
  v.name = "dual";
  v.drivetrain = DedicatedEngines{{100.0, 9.0}, {100.0, 9.0}};
  v.r_dyn_m = 0.33;
  v.l_fa_m = 1.3;
  v.l_ra_m = 1.5;
  v.m_veh_kg = 1200.0;
  return v;
}

double evaluate(const VehicleVariant& v, const UseCase& uc) {
  return assess_variant(v, uc, LateralModel::Decoupled).value;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidParameter;
}

}  // namespace

TEST_CASE("single-variant assessments") {
  const auto a = assess_variant(fixture_variant("A-Class Hatchback 2017 FWD"), loss_front(), LateralModel::Decoupled);
  CHECK(a.value == doctest::Approx(26.80).epsilon(5e-3));
  CHECK(a.gear == 1);
  CHECK_FALSE(a.feasible);

  const auto van = assess_variant(fixture_variant("Large European Van RWD"), loss_rear(), LateralModel::Decoupled);
  CHECK(van.value == doctest::Approx(48.78).epsilon(5e-3));
  CHECK(std::get<MuPotential>(van.detail).p_mu_ra == van.value);

  const auto suv = assess_variant(fixture_variant("SUV full size AWD"), no_loss(), LateralModel::Decoupled);
  CHECK(suv.value == doctest::Approx(1.245).epsilon(5e-3));
  CHECK(suv.gear == 1);
  CHECK(suv.feasible);
  CHECK(std::get<AccPotential>(suv.detail).p_acc_total == suv.value);
}

TEST_CASE("use-case and scenario must agree") {
  CHECK(kind_of([] { UseCase{UseCaseKind::LossFront, accel_scenario()}.validate(); }) ==
        ErrorKind::InvalidParameter);
  CHECK(kind_of([] { UseCase{UseCaseKind::NoLossAccel, loss_scenario()}.validate(); }) ==
        ErrorKind::InvalidParameter);
  CHECK_NOTHROW(loss_rear().validate());
}

TEST_CASE("use-case and model spellings") {
  for (auto kind : {UseCaseKind::LossFront, UseCaseKind::LossRear, UseCaseKind::NoLossAccel}) {
    CHECK(parse_use_case_kind(to_string(kind)) == kind);
  }
  for (auto model : {LateralModel::Decoupled, LateralModel::SingleTrack}) {
    CHECK(parse_lateral_model(to_string(model)) == model);
  }
  CHECK_THROWS_AS(parse_use_case_kind("loss"), Error);
  CHECK_THROWS_AS(parse_lateral_model("bicycle"), Error);
}

TEST_CASE("catalog ranking selects the reference worst cases") {
  const auto& variants = fixture_catalog().variants;
  CHECK(rank_catalog(variants, loss_front(), LateralModel::Decoupled).front().variant_name ==
        "A-Class Hatchback 2017 FWD");
  CHECK(rank_catalog(variants, loss_rear(), LateralModel::Decoupled).front().variant_name ==
        "Large European Van RWD");
  CHECK(rank_catalog(variants, no_loss(), LateralModel::Decoupled).front().variant_name == "SUV full size AWD");
}

TEST_CASE("ranking reproduces every reference row") {
  const auto& variants = fixture_catalog().variants;
  const auto front = rank_catalog(variants, loss_front(), LateralModel::Decoupled);
  const auto rear = rank_catalog(variants, loss_rear(), LateralModel::Decoupled);
  const auto accel = rank_catalog(variants, no_loss(), LateralModel::Decoupled);
  auto find = [](const std::vector<Assessment>& list, const std::string& name) {
    return *std::find_if(list.begin(), list.end(), [&](const auto& a) { return a.variant_name == name; });
  };
  for (const auto& row : reference_rows()) {
    CAPTURE(row.name);
    CHECK(find(front, row.name).value == doctest::Approx(row.p_mu_fa_loss_front).epsilon(5e-3));
    CHECK(find(rear, row.name).value == doctest::Approx(row.p_mu_ra_loss_rear).epsilon(5e-3));
    const auto a = find(accel, row.name);
    CHECK(a.gear == row.accel_gear);
    CHECK(a.value == doctest::Approx(row.accel_p_acc).epsilon(5e-3));
  }
}

TEST_CASE("ranking order contract") {
  const auto& variants = fixture_catalog().variants;
  const auto reference = rank_catalog(variants, loss_rear(), LateralModel::Decoupled);
  for (std::size_t i = 1; i < reference.size(); ++i) {
    CHECK(reference[i - 1].value >= reference[i].value * (1.0 - 1e-12));
  }

  SUBCASE("permutation invariance") {
    std::vector<VehicleVariant> shuffled(variants.begin(), variants.end());
    std::mt19937_64 rng(5);
    for (int round = 0; round < 20; ++round) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const auto ranked = rank_catalog(shuffled, loss_rear(), LateralModel::Decoupled);
      REQUIRE(ranked.size() == reference.size());
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(ranked[i].variant_name == reference[i].variant_name);
        CHECK(ranked[i].value == reference[i].value);
      }
    }
  }

  SUBCASE("parallel evaluation matches sequential") {
    for (unsigned threads : {2u, 3u, 8u, 64u}) {
      for (const auto& uc : {loss_front(), loss_rear(), no_loss()}) {
        const auto seq = rank_catalog(variants, uc, LateralModel::Decoupled, 1);
        const auto par = rank_catalog(variants, uc, LateralModel::Decoupled, threads);
        REQUIRE(seq.size() == par.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
          CHECK(seq[i].variant_name == par[i].variant_name);
          CHECK(seq[i].value == par[i].value);
        }
      }
    }
  }

  SUBCASE("equal values sort by name") {
    // All FWD variants share the same rear utilization in a loss-rear ranking.
    std::vector<std::string> tail;
    for (const auto& a : reference) {
      if (std::abs(a.value - reference.back().value) <= 1e-12) tail.push_back(a.variant_name);
    }
    CHECK(tail.size() == 6);
    CHECK(std::is_sorted(tail.begin(), tail.end()));

    auto twin = fixture_variant("Large European Van RWD");
    twin.name = "Aardvark Van";
    std::vector<VehicleVariant> with_twin(variants.begin(), variants.end());
    with_twin.push_back(twin);
    const auto ranked = rank_catalog(with_twin, loss_rear(), LateralModel::Decoupled);
    CHECK(ranked[0].variant_name == "Aardvark Van");
    CHECK(ranked[1].variant_name == "Large European Van RWD");
  }
}

TEST_CASE("ranking errors") {
  CHECK(kind_of([] { rank_catalog({}, loss_front(), LateralModel::Decoupled); }) == ErrorKind::EmptyCatalog);
  const std::vector<VehicleVariant> one{fixture_variant("SUV full size AWD")};
  CHECK(kind_of([&] { rank_catalog(one, {UseCaseKind::LossFront, accel_scenario()}, LateralModel::Decoupled); }) ==
        ErrorKind::InvalidParameter);
}

TEST_CASE("parameter names") {
  for (auto p : {Parameter::TMot, Parameter::RDyn, Parameter::IDiffFa, Parameter::IDiffRa, Parameter::LFa,
                 Parameter::LRa, Parameter::MVeh, Parameter::TMotFa, Parameter::RatioFa, Parameter::TMotRa,
                 Parameter::RatioRa}) {
    CHECK(parse_parameter(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_parameter("gear_ratios"), Error);

  auto v = fixture_variant("A-Class Hatchback 2017 FWD");
  set_parameter(v, Parameter::MVeh, 999.0);
  CHECK(get_parameter(v, Parameter::MVeh) == 999.0);
  auto dual = dual_engine_base();
  set_parameter(dual, Parameter::TMotRa, 250.0);
  CHECK(std::get<DedicatedEngines>(dual.drivetrain).ra.t_mot_nm == 250.0);
  CHECK_THROWS_AS(set_parameter(dual, Parameter::TMot, 1.0), Error);
}

TEST_CASE("parameter box validation") {
  ParameterBox box{fixture_variant("A-Class Hatchback 2017 FWD"), {}};
  CHECK_NOTHROW(box.validate());
  box.ranges[Parameter::TMot] = {200.0, 100.0};
  CHECK(kind_of([&] { box.validate(); }) == ErrorKind::InvalidParameter);
  box.ranges[Parameter::TMot] = {100.0, INFINITY};
  CHECK(kind_of([&] { box.validate(); }) == ErrorKind::InvalidParameter);
  box.ranges.clear();
  box.ranges[Parameter::TMotFa] = {100.0, 200.0};
  CHECK(kind_of([&] { box.validate(); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("one-parameter searches") {
  SUBCASE("engine torque, loss-front") {
    ParameterBox box{fixture_variant("A-Class Hatchback 2017 FWD"), {{Parameter::TMot, {100.0, 200.0}}}};
    const auto r = worst_case_search(box, loss_front(), LateralModel::Decoupled);
    CHECK(get_parameter(r.best_parameters, Parameter::TMot) == 200.0);
    CHECK(r.best_value == evaluate(r.best_parameters, loss_front()));
    CHECK(r.trace.front().phase == "corner");
  }

  SUBCASE("vehicle mass, no-loss") {
    ParameterBox box{dual_engine_base(), {{Parameter::MVeh, {800.0, 1600.0}}}};
    const auto r = worst_case_search(box, no_loss(), LateralModel::Decoupled);
    CHECK(r.best_parameters.m_veh_kg == 800.0);
    CHECK(r.skipped == 0);
    CHECK(r.best_value == evaluate(r.best_parameters, no_loss()));
  }

  SUBCASE("fixed ranges are not searched") {
    ParameterBox box{fixture_variant("A-Class Hatchback 2017 FWD"),
                     {{Parameter::TMot, {150.0, 150.0}}, {Parameter::MVeh, {1200.0, 1500.0}}}};
    const auto r = worst_case_search(box, loss_front(), LateralModel::Decoupled);
    CHECK(get_parameter(r.best_parameters, Parameter::TMot) == 150.0);
    // 2 corners, 5 grid points, 2 refine rounds of 5
    CHECK(r.evaluations == 2 + 5 + 5 + 5);
  }
}

TEST_CASE("two-parameter search agrees with an exhaustive grid") {
  ParameterBox box{fixture_variant("A-Class Hatchback 2017 FWD"),
                   {{Parameter::TMot, {100.0, 200.0}}, {Parameter::MVeh, {700.0, 1000.0}}}};
  const auto uc = loss_front();
  const auto r = worst_case_search(box, uc, LateralModel::Decoupled);

  double brute_best = -1.0;
  double brute_t = 0.0;
  double brute_m = 0.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      auto v = box.base;
      const double t = 100.0 + 100.0 * i / 100.0;
      const double m = 700.0 + 300.0 * j / 100.0;
      set_parameter(v, Parameter::TMot, t);
      set_parameter(v, Parameter::MVeh, m);
      const double value = evaluate(v, uc);
      if (value > brute_best) {
        brute_best = value;
        brute_t = t;
        brute_m = m;
      }
    }
  }
  CHECK(brute_t == 200.0);
  CHECK(brute_m == 700.0);
  CHECK(get_parameter(r.best_parameters, Parameter::TMot) == brute_t);
  CHECK(get_parameter(r.best_parameters, Parameter::MVeh) == brute_m);
  CHECK(r.best_value == brute_best);
}

TEST_CASE("search determinism and dominance") {
  ParameterBox box{fixture_variant("D-Class SUV v9 2017 AWD"),
                   {{Parameter::TMot, {250.0, 450.0}},
                    {Parameter::MVeh, {1500.0, 2100.0}},
                    {Parameter::LFa, {1.2, 1.5}}}};
  const auto uc = loss_rear();
  const auto reference = worst_case_search(box, uc, LateralModel::Decoupled, {5, 2, 1});

  for (unsigned threads : {2u, 4u, 16u}) {
    const auto r = worst_case_search(box, uc, LateralModel::Decoupled, {5, 2, threads});
    CHECK(r.best_value == reference.best_value);
    CHECK(r.best_parameters == reference.best_parameters);
    CHECK(r.evaluations == reference.evaluations);
    REQUIRE(r.trace.size() == reference.trace.size());
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].evaluation == reference.trace[i].evaluation);
      CHECK(r.trace[i].point == reference.trace[i].point);
    }
  }

  double corner_max = -1.0;
  for (double t : {250.0, 450.0}) {
    for (double m : {1500.0, 2100.0}) {
      for (double l : {1.2, 1.5}) {
        auto v = box.base;
        set_parameter(v, Parameter::TMot, t);
        set_parameter(v, Parameter::MVeh, m);
        set_parameter(v, Parameter::LFa, l);
        corner_max = std::max(corner_max, evaluate(v, uc));
      }
    }
  }
  CHECK(reference.best_value >= corner_max);
  CHECK(std::abs(reference.best_value - evaluate(reference.best_parameters, uc)) <= 1e-12);
  for (std::size_t i = 1; i < reference.trace.size(); ++i) {
    CHECK(reference.trace[i].value > reference.trace[i - 1].value);
  }
}

TEST_CASE("search failure modes") {
  SUBCASE("every sample loses traction") {
    auto v = dual_engine_base();
    v.m_veh_kg = 100.0;
    ParameterBox box{v, {{Parameter::MVeh, {100.0, 120.0}}}};
    CHECK(kind_of([&] { worst_case_search(box, no_loss(), LateralModel::Decoupled); }) ==
          ErrorKind::NoFeasiblePoint);
  }
  SUBCASE("invalid samples are skipped") {
    ParameterBox box{fixture_variant("Large European Van RWD"), {{Parameter::RDyn, {0.0, 0.4}}}};
    const auto r = worst_case_search(box, loss_rear(), LateralModel::Decoupled);
    CHECK(r.skipped >= 1);
    CHECK(r.best_parameters.r_dyn_m > 0.0);
  }
  SUBCASE("bad configuration") {
    ParameterBox box{fixture_variant("Large European Van RWD"), {{Parameter::MVeh, {2000.0, 2400.0}}}};
    CHECK(kind_of([&] { worst_case_search(box, loss_rear(), LateralModel::Decoupled, {1, 2, 1}); }) ==
          ErrorKind::InvalidParameter);
    CHECK(kind_of([&] { worst_case_search(box, loss_rear(), LateralModel::Decoupled, {5, -1, 1}); }) ==
          ErrorKind::InvalidParameter);
  }
}
