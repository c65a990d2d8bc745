#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wcv {

/// One engine driving both axles through a gearbox and per-axle differentials.
/// A gear ratio of 0 marks an absent gear slot; a differential ratio of 0
/// marks an undriven axle.
struct SingleEngine {
  double t_mot_nm = 0.0;
  std::vector<double> gear_ratios;
  double i_diff_fa = 0.0;
  double i_diff_ra = 0.0;

  bool operator==(const SingleEngine&) const = default;
};

struct AxleEngine {
  double t_mot_nm = 0.0;
  double ratio = 0.0;  // fixed total ratio engine -> wheel; 0 = undriven

  bool operator==(const AxleEngine&) const = default;
};

/// A dedicated engine per axle with a fixed ratio each; no gearbox.
struct DedicatedEngines {
  AxleEngine fa;
  AxleEngine ra;

  bool operator==(const DedicatedEngines&) const = default;
};

using Drivetrain = std::variant<SingleEngine, DedicatedEngines>;

struct VehicleVariant {
  std::string name;
  Drivetrain drivetrain;
  double r_dyn_m = 0.0;
  double l_fa_m = 0.0;  // CG to front axle
  double l_ra_m = 0.0;  // CG to rear axle
  double m_veh_kg = 0.0;

  double wheelbase_m() const { return l_fa_m + l_ra_m; }
  bool has_single_engine() const { return std::holds_alternative<SingleEngine>(drivetrain); }

  bool operator==(const VehicleVariant&) const = default;
};

enum class DriveLayout { FrontWheelDrive, RearWheelDrive, AllWheelDrive };

std::string_view to_string(DriveLayout layout);

/// Derived from which axles receive torque, never stored.
DriveLayout drive_layout(const VehicleVariant& variant);

/// Throws ValidationError naming the variant and the offending field.
void validate(const VehicleVariant& variant);

/// 1-based gear numbers of the present (nonzero) gear slots, in gear order.
/// Empty for dedicated-engine layouts.
std::vector<int> present_gears(const VehicleVariant& variant);

/// "1st", "2nd", ...; gear 0 denotes the fixed ratio of a dedicated layout.
std::string gear_label(int gear);

}  // namespace wcv
