#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wcvariant/characteristics.hpp"
#include "wcvariant/scenario.hpp"
#include "wcvariant/vehicle.hpp"

namespace wcv {

enum class UseCaseKind { LossFront, LossRear, NoLossAccel };

/// CLI spelling: loss-front, loss-rear, no-loss.
std::string_view to_string(UseCaseKind kind);
UseCaseKind parse_use_case_kind(std::string_view text);

std::string_view to_string(LateralModel model);
LateralModel parse_lateral_model(std::string_view text);

struct UseCase {
  UseCaseKind kind = UseCaseKind::LossFront;
  Scenario scenario;

  /// Loss cases need a curved scenario, the acceleration case a straight one.
  void validate() const;
};

struct Assessment {
  std::string variant_name;
  UseCaseKind kind = UseCaseKind::LossFront;
  double value = 0.0;  // P_mu of the targeted axle, or total P_acc
  int gear = 1;
  std::variant<MuPotential, AccPotential> detail;
  bool feasible = false;  // traction kept on the relevant axle(s)
};

Assessment assess_variant(const VehicleVariant& variant, const UseCase& use_case,
                          LateralModel model);

/// Worst first: descending value, ties (equal to 12 significant digits) by
/// ascending name. Variants are evaluated on up to `threads` workers; the
/// order never depends on it.
/// Throws EmptyCatalog.
std::vector<Assessment> rank_catalog(std::span<const VehicleVariant> catalog,
                                     const UseCase& use_case, LateralModel model,
                                     unsigned threads = 1);

/// Searchable scalar fields of a VehicleVariant. The gear list is never searched.
enum class Parameter {
  TMot,
  RDyn,
  IDiffFa,
  IDiffRa,
  LFa,
  LRa,
  MVeh,
  TMotFa,
  RatioFa,
  TMotRa,
  RatioRa,
};

std::string_view to_string(Parameter p);  // field name as in catalog files
Parameter parse_parameter(std::string_view text);

double get_parameter(const VehicleVariant& v, Parameter p);
void set_parameter(VehicleVariant& v, Parameter p, double value);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool is_fixed() const { return lo == hi; }
};

/// Closed ranges around a base variant; fields without a range keep the
/// base value.
struct ParameterBox {
  VehicleVariant base;
  std::map<Parameter, Interval> ranges;

  /// Throws InvalidParameter on lo > hi, non-finite bounds, or parameters
  /// that do not exist for the base drivetrain layout.
  void validate() const;
};

struct SearchConfig {
  int grid_points_per_dim = 5;
  int refine_rounds = 2;
  unsigned threads = 1;
};

struct SearchStep {
  std::string phase;  // "corner", "grid", "refine-<k>"
  std::size_t evaluation = 0;
  double value = 0.0;
  std::map<Parameter, double> point;
};

struct SearchResult {
  VehicleVariant best_parameters;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  std::size_t skipped = 0;  // samples that violated variant invariants or constraints
  std::vector<SearchStep> trace;
};

/// Deterministic corner enumeration, full-factorial grid, then shrinking
/// grids around the incumbent. For the acceleration use-case only samples
/// that keep traction are admissible. Throws NoFeasiblePoint.
SearchResult worst_case_search(const ParameterBox& box, const UseCase& use_case,
                               LateralModel model, const SearchConfig& config = {});

}  // namespace wcv
