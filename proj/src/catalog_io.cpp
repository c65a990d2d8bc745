#include "wcvariant/catalog_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wcvariant/errors.hpp"

namespace wcv {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// --- JSON helpers ------------------------------------------------------------

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view bytes, std::string_view what) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const auto [line, column] = line_column(bytes, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::ParseError, std::string(what) + " line " + std::to_string(line) + " column " +
                                           std::to_string(column) + ": malformed JSON");
  }
}

void reject_unknown(const json& object, std::initializer_list<std::string_view> known, const std::string& where) {
  if (!object.is_object()) {
    throw Error(ErrorKind::ParseError, where + ": expected an object");
  }
  for (const auto& item : object.items()) {
    bool found = false;
    for (auto k : known) found = found || item.key() == k;
    if (!found) {
      throw Error(ErrorKind::ParseError, where + ": unknown field '" + item.key() + "'");
    }
  }
}

double number_field(const json& object, std::string_view key, const std::string& where) {
  const auto it = object.find(std::string(key));
  if (it == object.end()) {
    throw Error(ErrorKind::ParseError, where + ": missing field '" + std::string(key) + "'");
  }
  if (!it->is_number()) {
    throw Error(ErrorKind::ParseError, where + ": field '" + std::string(key) + "' must be a number");
  }
  return it->get<double>();
}

std::string string_field(const json& object, std::string_view key, const std::string& where) {
  const auto it = object.find(std::string(key));
  if (it == object.end() || !it->is_string()) {
    throw Error(ErrorKind::ParseError, where + ": field '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

VehicleVariant variant_from_json(const json& j, const std::string& where) {
  VehicleVariant v;
  if (j.is_object() && j.contains("engines")) {
    reject_unknown(j, {"name", "engines", "r_dyn_m", "l_fa_m", "l_ra_m", "m_veh_kg"}, where);
    const json& engines = j.at("engines");
    reject_unknown(engines, {"fa", "ra"}, where + ".engines");
    DedicatedEngines d;
    for (auto [key, slot] : {std::pair{"fa", &d.fa}, std::pair{"ra", &d.ra}}) {
      if (!engines.contains(key)) continue;  // absent engine: undriven axle
      const std::string at = where + ".engines." + key;
      const json& e = engines.at(key);
      reject_unknown(e, {"t_mot_nm", "i"}, at);
      slot->t_mot_nm = number_field(e, "t_mot_nm", at);
      slot->ratio = number_field(e, "i", at);
    }
    v.drivetrain = d;
  } else {
    reject_unknown(j, {"name", "t_mot_nm", "r_dyn_m", "gear_ratios", "i_diff_fa", "i_diff_ra", "l_fa_m", "l_ra_m",
                       "m_veh_kg"},
                   where);
    SingleEngine s;
    s.t_mot_nm = number_field(j, "t_mot_nm", where);
    const auto gears = j.find("gear_ratios");
    if (gears == j.end() || !gears->is_array()) {
      throw Error(ErrorKind::ParseError, where + ": field 'gear_ratios' must be an array");
    }
    for (const auto& g : *gears) {
      if (!g.is_number()) throw Error(ErrorKind::ParseError, where + ": gear ratios must be numbers");
      s.gear_ratios.push_back(g.get<double>());
    }
    s.i_diff_fa = number_field(j, "i_diff_fa", where);
    s.i_diff_ra = number_field(j, "i_diff_ra", where);
    v.drivetrain = s;
  }
  v.name = string_field(j, "name", where);
  v.r_dyn_m = number_field(j, "r_dyn_m", where);
  v.l_fa_m = number_field(j, "l_fa_m", where);
  v.l_ra_m = number_field(j, "l_ra_m", where);
  v.m_veh_kg = number_field(j, "m_veh_kg", where);
  return v;
}

ordered_json variant_to_json(const VehicleVariant& v) {
  ordered_json j;
  j["name"] = v.name;
  if (const auto* s = std::get_if<SingleEngine>(&v.drivetrain)) {
    j["t_mot_nm"] = s->t_mot_nm;
    j["r_dyn_m"] = v.r_dyn_m;
    j["gear_ratios"] = s->gear_ratios;
    j["i_diff_fa"] = s->i_diff_fa;
    j["i_diff_ra"] = s->i_diff_ra;
  } else {
    const auto& d = std::get<DedicatedEngines>(v.drivetrain);
    j["engines"]["fa"] = {{"t_mot_nm", d.fa.t_mot_nm}, {"i", d.fa.ratio}};
    j["engines"]["ra"] = {{"t_mot_nm", d.ra.t_mot_nm}, {"i", d.ra.ratio}};
    j["r_dyn_m"] = v.r_dyn_m;
  }
  j["l_fa_m"] = v.l_fa_m;
  j["l_ra_m"] = v.l_ra_m;
  j["m_veh_kg"] = v.m_veh_kg;
  return j;
}

void check_catalog(const Catalog& catalog) {
  std::set<std::string> names;
  for (const auto& v : catalog.variants) {
    validate(v);
    if (!names.insert(v.name).second) {
      throw Error(ErrorKind::DuplicateName, "variant name '" + v.name + "' appears more than once");
    }
  }
}

Catalog parse_catalog_json(std::string_view bytes) {
  const json doc = parse_json(bytes, "catalog");
  reject_unknown(doc, {"schema_version", "variants"}, "catalog");
  const auto version = doc.find("schema_version");
  if (version == doc.end() || !version->is_number_integer()) {
    throw Error(ErrorKind::ParseError, "catalog: integer field 'schema_version' is required");
  }
  Catalog catalog;
  catalog.schema_version = version->get<int>();
  if (catalog.schema_version != kCatalogSchemaVersion) {
    throw Error(ErrorKind::ValidationError, "unsupported schema_version " + std::to_string(catalog.schema_version));
  }
  const auto variants = doc.find("variants");
  if (variants == doc.end() || !variants->is_array()) {
    throw Error(ErrorKind::ParseError, "catalog: field 'variants' must be an array");
  }
  for (std::size_t i = 0; i < variants->size(); ++i) {
    catalog.variants.push_back(variant_from_json((*variants)[i], "variants[" + std::to_string(i) + "]"));
  }
  check_catalog(catalog);
  return catalog;
}

// --- CSV -----------------------------------------------------------------------

constexpr std::string_view kCsvHeader =
    "name,t_mot_nm,r_dyn_m,i_1,i_2,i_3,i_4,i_5,i_6,i_7,i_diff_fa,i_diff_ra,l_fa_m,l_ra_m,m_veh_kg";
constexpr std::size_t kCsvColumns = 15;

struct CsvCell {
  std::string text;
  std::size_t column;  // 1-based character column where the cell starts
};

std::vector<CsvCell> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<CsvCell> cells;
  std::size_t i = 0;
  while (true) {
    CsvCell cell{{}, i + 1};
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) {
          throw Error(ErrorKind::ParseError, "csv line " + std::to_string(line_no) + " column " +
                                                 std::to_string(cell.column) + ": unterminated quote");
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cell.text.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cell.text.push_back(line[i++]);
      }
      if (i < line.size() && line[i] != ',') {
        throw Error(ErrorKind::ParseError, "csv line " + std::to_string(line_no) + " column " + std::to_string(i + 1) +
                                               ": expected ',' after quoted field");
      }
    } else {
      while (i < line.size() && line[i] != ',') cell.text.push_back(line[i++]);
    }
    cells.push_back(std::move(cell));
    if (i >= line.size()) break;
    ++i;  // skip ','
  }
  return cells;
}

double csv_number(const CsvCell& cell, std::size_t line_no) {
  double value = 0.0;
  const char* first = cell.text.data();
  const char* last = first + cell.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.text.empty()) {
    throw Error(ErrorKind::ParseError, "csv line " + std::to_string(line_no) + " column " +
                                           std::to_string(cell.column) + ": invalid number '" + cell.text + "'");
  }
  return value;
}

Catalog parse_catalog_csv(std::string_view bytes) {
  Catalog catalog;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= bytes.size()) {
    const std::size_t end = std::min(bytes.find('\n', pos), bytes.size());
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader) {
        throw Error(ErrorKind::ParseError, "csv line " + std::to_string(line_no) + ": expected header '" +
                                               std::string(kCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    const auto cells = split_csv_line(line, line_no);
    if (cells.size() != kCsvColumns) {
      throw Error(ErrorKind::ParseError, "csv line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(kCsvColumns) + " fields, got " +
                                             std::to_string(cells.size()));
    }
    VehicleVariant v;
    SingleEngine s;
    v.name = cells[0].text;
    s.t_mot_nm = csv_number(cells[1], line_no);
    v.r_dyn_m = csv_number(cells[2], line_no);
    for (std::size_t g = 3; g < 10; ++g) s.gear_ratios.push_back(csv_number(cells[g], line_no));
    s.i_diff_fa = csv_number(cells[10], line_no);
    s.i_diff_ra = csv_number(cells[11], line_no);
    v.l_fa_m = csv_number(cells[12], line_no);
    v.l_ra_m = csv_number(cells[13], line_no);
    v.m_veh_kg = csv_number(cells[14], line_no);
    v.drivetrain = std::move(s);
    catalog.variants.push_back(std::move(v));
  }
  if (!header_seen) {
    throw Error(ErrorKind::ParseError, "csv: missing header line");
  }
  check_catalog(catalog);
  return catalog;
}

}  // namespace

void Scenario::validate() const {
  if (!(std::isfinite(mu) && mu > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "friction coefficient must be positive, got " + std::to_string(mu));
  }
  frame.validate();
}

std::string serialize_variant(const VehicleVariant& variant) { return variant_to_json(variant).dump(); }

Catalog parse_catalog(std::string_view bytes, CatalogFormat format) {
  return format == CatalogFormat::Json ? parse_catalog_json(bytes) : parse_catalog_csv(bytes);
}

std::string serialize_catalog(const Catalog& catalog) {
  ordered_json doc;
  doc["schema_version"] = catalog.schema_version;
  doc["variants"] = ordered_json::array();
  for (const auto& v : catalog.variants) doc["variants"].push_back(variant_to_json(v));
  return doc.dump(2) + "\n";
}

Scenario parse_scenario(std::string_view bytes) {
  const json j = parse_json(bytes, "scenario");
  reject_unknown(j, {"name", "mu", "radius_m", "speed_kph", "exposure"}, "scenario");
  Scenario s;
  s.name = string_field(j, "name", "scenario");
  s.mu = number_field(j, "mu", "scenario");
  const double speed = kph_to_mps(number_field(j, "speed_kph", "scenario"));
  const auto radius = j.find("radius_m");
  if (radius != j.end() && radius->is_string() && radius->get<std::string>() == "straight") {
    s.frame = CurveFrame::straight(speed);
  } else if (radius != j.end() && radius->is_number()) {
    s.frame = CurveFrame::curve(radius->get<double>(), speed);
  } else {
    throw Error(ErrorKind::ParseError, "scenario: field 'radius_m' must be a number or \"straight\"");
  }
  if (j.contains("exposure")) s.exposure_label = string_field(j, "exposure", "scenario");
  try {
    s.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, "scenario '" + s.name + "': " + e.detail());
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json j;
  j["name"] = s.name;
  j["mu"] = s.mu;
  if (s.frame.is_straight()) {
    j["radius_m"] = "straight";
  } else {
    j["radius_m"] = *s.frame.radius_m;
  }
  j["speed_kph"] = mps_to_kph(s.frame.speed_mps);
  j["exposure"] = s.exposure_label;
  return j.dump(2) + "\n";
}

std::vector<Scenario> builtin_scenarios() {
  return {
      Scenario{"loss-of-traction", 0.4, CurveFrame::curve(4.0, kph_to_mps(12.12)), "E3"},
      Scenario{"straight-acceleration", 1.0, CurveFrame::straight(0.0), "E4"},
  };
}

ParameterBox parse_parameter_box(std::string_view bytes) {
  const json j = parse_json(bytes, "parameter box");
  reject_unknown(j, {"base", "ranges"}, "parameter box");
  if (!j.contains("base")) throw Error(ErrorKind::ParseError, "parameter box: missing field 'base'");
  ParameterBox box;
  box.base = variant_from_json(j.at("base"), "base");
  if (j.contains("ranges")) {
    const json& ranges = j.at("ranges");
    if (!ranges.is_object()) throw Error(ErrorKind::ParseError, "parameter box: 'ranges' must be an object");
    for (const auto& item : ranges.items()) {
      const auto& r = item.value();
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
        throw Error(ErrorKind::ParseError, "parameter box: range '" + item.key() + "' must be [lo, hi]");
      }
      Parameter p;
      try {
        p = parse_parameter(item.key());
      } catch (const Error&) {
        throw Error(ErrorKind::ParseError, "parameter box: unknown parameter '" + item.key() + "'");
      }
      box.ranges[p] = Interval{r[0].get<double>(), r[1].get<double>()};
    }
  }
  try {
    box.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, "parameter box: " + e.detail());
  }
  return box;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Catalog load_catalog(const std::string& path) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return parse_catalog(read_file(path), csv ? CatalogFormat::Csv : CatalogFormat::Json);
}

}  // namespace wcv
