#include "wcvariant/vehicle.hpp"

#include <cmath>

#include "wcvariant/errors.hpp"

namespace wcv {

namespace {

[[noreturn]] void invalid(const VehicleVariant& v, std::string_view field, const std::string& why) {
  throw Error(ErrorKind::ValidationError,
              "variant '" + v.name + "' field " + std::string(field) + ": " + why);
}

void require_positive(const VehicleVariant& v, std::string_view field, double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    invalid(v, field, "must be positive, got " + std::to_string(value));
  }
}

void require_non_negative(const VehicleVariant& v, std::string_view field, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    invalid(v, field, "must be non-negative, got " + std::to_string(value));
  }
}

struct AxleDrive {
  bool front;
  bool rear;
};

AxleDrive driven_axles(const VehicleVariant& v) {
  if (const auto* single = std::get_if<SingleEngine>(&v.drivetrain)) {
    return {single->i_diff_fa != 0.0, single->i_diff_ra != 0.0};
  }
  const auto& dedicated = std::get<DedicatedEngines>(v.drivetrain);
  return {dedicated.fa.ratio != 0.0 && dedicated.fa.t_mot_nm != 0.0,
          dedicated.ra.ratio != 0.0 && dedicated.ra.t_mot_nm != 0.0};
}

}  // namespace

std::string_view to_string(DriveLayout layout) {
  switch (layout) {
    case DriveLayout::FrontWheelDrive: return "FWD";
    case DriveLayout::RearWheelDrive: return "RWD";
    case DriveLayout::AllWheelDrive: return "AWD";
  }
  return "?";
}

DriveLayout drive_layout(const VehicleVariant& variant) {
  const auto axles = driven_axles(variant);
  if (axles.front && axles.rear) return DriveLayout::AllWheelDrive;
  return axles.front ? DriveLayout::FrontWheelDrive : DriveLayout::RearWheelDrive;
}

void validate(const VehicleVariant& v) {
  if (v.name.empty()) {
    invalid(v, "name", "must not be empty");
  }
  require_positive(v, "r_dyn_m", v.r_dyn_m);
  require_positive(v, "l_fa_m", v.l_fa_m);
  require_positive(v, "l_ra_m", v.l_ra_m);
  require_positive(v, "m_veh_kg", v.m_veh_kg);

  if (const auto* single = std::get_if<SingleEngine>(&v.drivetrain)) {
    require_positive(v, "t_mot_nm", single->t_mot_nm);
    require_non_negative(v, "i_diff_fa", single->i_diff_fa);
    require_non_negative(v, "i_diff_ra", single->i_diff_ra);

    double previous = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < single->gear_ratios.size(); ++i) {
      const double ratio = single->gear_ratios[i];
      const std::string field = "gear_ratios[" + std::to_string(i) + "]";
      require_non_negative(v, field, ratio);
      if (ratio == 0.0) continue;
      if (any && ratio >= previous) {
        invalid(v, field, "nonzero gear ratios must be strictly decreasing");
      }
      previous = ratio;
      any = true;
    }
    if (!any) {
      invalid(v, "gear_ratios", "at least one nonzero gear ratio is required");
    }
    if (single->i_diff_fa == 0.0 && single->i_diff_ra == 0.0) {
      invalid(v, "i_diff_fa", "at least one axle must be driven");
    }
  } else {
    const auto& dedicated = std::get<DedicatedEngines>(v.drivetrain);
    require_non_negative(v, "engines.fa.t_mot_nm", dedicated.fa.t_mot_nm);
    require_non_negative(v, "engines.fa.i", dedicated.fa.ratio);
    require_non_negative(v, "engines.ra.t_mot_nm", dedicated.ra.t_mot_nm);
    require_non_negative(v, "engines.ra.i", dedicated.ra.ratio);
    const auto axles = driven_axles(v);
    if (!axles.front && !axles.rear) {
      invalid(v, "engines", "at least one axle must be driven");
    }
  }
}

std::vector<int> present_gears(const VehicleVariant& variant) {
  std::vector<int> gears;
  if (const auto* single = std::get_if<SingleEngine>(&variant.drivetrain)) {
    for (std::size_t i = 0; i < single->gear_ratios.size(); ++i) {
      if (single->gear_ratios[i] != 0.0) gears.push_back(static_cast<int>(i) + 1);
    }
  }
  return gears;
}

std::string gear_label(int gear) {
  if (gear == 0) return "fixed";
  const int mod100 = gear % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (gear % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(gear) + suffix;
}

}  // namespace wcv
