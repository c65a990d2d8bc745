#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wcvariant/analysis.hpp"
#include "wcvariant/scenario.hpp"
#include "wcvariant/vehicle.hpp"

namespace wcv {

inline constexpr int kCatalogSchemaVersion = 1;

struct Catalog {
  int schema_version = kCatalogSchemaVersion;
  std::vector<VehicleVariant> variants;

  bool operator==(const Catalog&) const = default;
};

enum class CatalogFormat { Json, Csv };

/// Strict parse: unknown fields are rejected, every variant is validated and
/// names must be unique. Throws ParseError, ValidationError or DuplicateName.
Catalog parse_catalog(std::string_view bytes, CatalogFormat format);

/// JSON form; lossless for every finite double.
std::string serialize_catalog(const Catalog& catalog);

/// Single variant as compact catalog-schema JSON.
std::string serialize_variant(const VehicleVariant& variant);

/// Scenario JSON with speed in kph and radius as a number or "straight".
Scenario parse_scenario(std::string_view bytes);
std::string serialize_scenario(const Scenario& scenario);

/// Loss-of-traction scenario (mu 0.4, R 4 m, 12.12 kph, E3) followed by the
/// acceleration scenario (mu 1, straight ahead, E4).
std::vector<Scenario> builtin_scenarios();

/// {"base": <variant>, "ranges": {"<field>": [lo, hi], ...}}
ParameterBox parse_parameter_box(std::string_view bytes);

/// Reads a whole file; format chosen by extension (.csv, else JSON).
std::string read_file(const std::string& path);
Catalog load_catalog(const std::string& path);

}  // namespace wcv
