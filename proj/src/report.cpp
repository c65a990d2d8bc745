#include "wcvariant/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "wcvariant/catalog_io.hpp"
#include "wcvariant/errors.hpp"

namespace wcv {

using nlohmann::ordered_json;

namespace {

std::string format_general(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_1dp(double value) {
  const double rounded = std::round(value * 10.0) / 10.0 + 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", rounded);
  return buf;
}

std::string csv_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct Column {
  std::string title;
  bool left_aligned = false;
};

std::string render_table(const std::vector<Column>& columns, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& c : columns) widths.push_back(c.title.size());
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  auto render_row = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) line += "  ";
      const std::string pad(widths[i] - cells[i].size(), ' ');
      line += columns[i].left_aligned ? cells[i] + pad : pad + cells[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + "\n";
  };
  std::vector<std::string> titles;
  for (const auto& c : columns) titles.push_back(c.title);
  std::string out = render_row(titles);
  for (const auto& row : rows) out += render_row(row);
  return out;
}

std::string header_lines(const ReportHeader& h) {
  const Scenario& s = h.scenario;
  std::string out;
  out += "# tool: wcvariant " + h.tool_version + "\n";
  out += "# use-case: " + std::string(to_string(h.kind)) + "\n";
  out += "# model: " + std::string(to_string(h.model)) + "\n";
  out += "# scenario: " + s.name + "\n";
  out += "# mu: " + format_general(s.mu) + "\n";
  out += "# radius_m: " + (s.frame.is_straight() ? std::string("straight") : format_general(*s.frame.radius_m)) + "\n";
  out += "# speed_kph: " + format_general(mps_to_kph(s.frame.speed_mps)) + "\n";
  out += "# exposure: " + s.exposure_label + "\n";
  return out;
}

ordered_json header_json(const ReportHeader& h) {
  const Scenario& s = h.scenario;
  ordered_json j;
  j["tool"] = "wcvariant " + h.tool_version;
  j["use_case"] = to_string(h.kind);
  j["model"] = to_string(h.model);
  j["scenario"]["name"] = s.name;
  j["scenario"]["mu"] = s.mu;
  if (s.frame.is_straight()) {
    j["scenario"]["radius_m"] = "straight";
  } else {
    j["scenario"]["radius_m"] = *s.frame.radius_m;
  }
  j["scenario"]["speed_kph"] = mps_to_kph(s.frame.speed_mps);
  j["scenario"]["exposure"] = s.exposure_label;
  return j;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Cells shared by CSV and table output, without rank.
std::vector<std::string> row_cells(const Assessment& a, ReportStyle style) {
  std::vector<std::string> cells{a.variant_name, gear_label(a.gear), format_3dp(a.value)};
  if (const auto* mu = std::get_if<MuPotential>(&a.detail)) {
    const double other = a.kind == UseCaseKind::LossFront ? mu->p_mu_ra : mu->p_mu_fa;
    cells.push_back(format_3dp(other));
    cells.push_back(yes_no(a.feasible));
    if (style == ReportStyle::Detail) {
      for (const AxleForces* f : {&mu->forces_fa, &mu->forces_ra}) {
        cells.push_back(format_1dp(f->f_par_n));
        cells.push_back(format_1dp(f->f_perp_n));
        cells.push_back(format_1dp(f->f_n_n));
        cells.push_back(format_1dp(f->f_mu_n));
      }
    }
  } else {
    const auto& acc = std::get<AccPotential>(a.detail);
    cells.push_back(format_3dp(acc.p_acc_fa));
    cells.push_back(format_3dp(acc.p_acc_ra));
    cells.push_back(format_3dp(acc.p_mu_fa));
    cells.push_back(format_3dp(acc.p_mu_ra));
    cells.push_back(yes_no(a.feasible));
  }
  return cells;
}

std::vector<Column> columns_for(UseCaseKind kind, ReportStyle style) {
  std::vector<Column> cols{{"variant", true}, {"gear", true}, {std::string(characteristic_name(kind)), false}};
  if (kind == UseCaseKind::NoLossAccel) {
    for (const char* t : {"P_acc_FA", "P_acc_RA", "P_mu_FA", "P_mu_RA"}) cols.push_back({t, false});
    cols.push_back({"traction_kept", true});
  } else {
    cols.push_back({kind == UseCaseKind::LossFront ? "P_mu_RA" : "P_mu_FA", false});
    cols.push_back({"traction_kept", true});
    if (style == ReportStyle::Detail) {
      for (const char* axle : {"FA", "RA"}) {
        for (const char* f : {"F_par", "F_perp", "F_N", "F_mu"}) {
          cols.push_back({std::string(f) + "_" + axle + "_N", false});
        }
      }
    }
  }
  return cols;
}

ordered_json detail_json(const Assessment& a) {
  ordered_json d;
  if (const auto* mu = std::get_if<MuPotential>(&a.detail)) {
    d["p_mu_fa"] = mu->p_mu_fa;
    d["p_mu_ra"] = mu->p_mu_ra;
    for (auto [key, f] : {std::pair{"fa", &mu->forces_fa}, std::pair{"ra", &mu->forces_ra}}) {
      d["forces"][key] = {{"f_par_n", f->f_par_n}, {"f_perp_n", f->f_perp_n}, {"f_n_n", f->f_n_n}, {"f_mu_n", f->f_mu_n}};
    }
  } else {
    const auto& acc = std::get<AccPotential>(a.detail);
    d["p_acc_fa"] = acc.p_acc_fa;
    d["p_acc_ra"] = acc.p_acc_ra;
    d["p_acc_total"] = acc.p_acc_total;
    d["p_mu_fa"] = acc.p_mu_fa;
    d["p_mu_ra"] = acc.p_mu_ra;
  }
  return d;
}

std::string summary_line(const Assessment& top) {
  return "worst-case: " + top.variant_name + " (" + std::string(characteristic_name(top.kind)) + "=" +
         format_3dp(top.value) + ")";
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::Table;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorKind::InvalidParameter, "unknown format '" + std::string(text) + "'");
}

std::string_view characteristic_name(UseCaseKind kind) {
  switch (kind) {
    case UseCaseKind::LossFront: return "P_mu_FA";
    case UseCaseKind::LossRear: return "P_mu_RA";
    case UseCaseKind::NoLossAccel: return "P_acc";
  }
  return "?";
}

std::string format_3dp(double value) {
  // std::round rounds halves away from zero; +0.0 folds -0 into 0.
  const double rounded = std::round(value * 1000.0) / 1000.0 + 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", rounded);
  return buf;
}

std::string serialize_report(std::span<const Assessment> assessments, ReportFormat format,
                             const std::optional<ReportHeader>& header, ReportStyle style) {
  if (assessments.empty()) {
    throw Error(ErrorKind::InvalidParameter, "report needs at least one assessment");
  }
  const UseCaseKind kind = assessments.front().kind;
  const bool ranking = style == ReportStyle::Ranking;

  if (format == ReportFormat::Json) {
    ordered_json doc;
    if (header) doc["header"] = header_json(*header);
    doc["characteristic"] = characteristic_name(kind);
    doc["assessments"] = ordered_json::array();
    for (std::size_t i = 0; i < assessments.size(); ++i) {
      const Assessment& a = assessments[i];
      ordered_json row;
      if (ranking) row["rank"] = i + 1;
      row["variant"] = a.variant_name;
      row["gear"] = a.gear;
      row["gear_label"] = gear_label(a.gear);
      row["value"] = a.value;
      row["value_display"] = format_3dp(a.value);
      row["traction_kept"] = a.feasible;
      row["detail"] = detail_json(a);
      doc["assessments"].push_back(std::move(row));
    }
    if (ranking) doc["worst_case"] = assessments.front().variant_name;
    return doc.dump(2) + "\n";
  }

  std::string out = header ? header_lines(*header) : std::string{};
  auto columns = columns_for(kind, style);
  std::vector<std::vector<std::string>> rows;
  for (const Assessment& a : assessments) rows.push_back(row_cells(a, style));

  // CSV rows are already in rank order; only the table gets a rank column.
  if (format == ReportFormat::Csv) {
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) line += (i ? "," : "") + columns[i].title;
    out += line + "\n";
    for (const auto& row : rows) {
      line.clear();
      for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + (i == 0 ? csv_quote(row[i]) : row[i]);
      out += line + "\n";
    }
    if (ranking) out += "# " + summary_line(assessments.front()) + "\n";
    return out;
  }

  if (ranking) {
    columns.insert(columns.begin(), Column{"rank", false});
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].insert(rows[i].begin(), std::to_string(i + 1));
  }
  out += render_table(columns, rows);
  if (ranking) out += summary_line(assessments.front()) + "\n";
  return out;
}

std::string serialize_search_result(const SearchResult& result, ReportFormat format,
                                    const std::optional<ReportHeader>& header) {
  if (format == ReportFormat::Json) {
    ordered_json doc;
    if (header) doc["header"] = header_json(*header);
    doc["best_value"] = result.best_value;
    doc["best_value_display"] = format_3dp(result.best_value);
    doc["evaluations"] = result.evaluations;
    doc["skipped"] = result.skipped;
    doc["best_parameters"] = ordered_json::parse(serialize_variant(result.best_parameters));
    doc["trace"] = ordered_json::array();
    for (const auto& step : result.trace) {
      ordered_json s;
      s["phase"] = step.phase;
      s["evaluation"] = step.evaluation;
      s["value"] = step.value;
      for (const auto& [p, v] : step.point) s["point"][std::string(to_string(p))] = v;
      doc["trace"].push_back(std::move(s));
    }
    return doc.dump(2) + "\n";
  }

  const std::string value_name = header ? std::string(characteristic_name(header->kind)) : "value";
  std::string out = header ? header_lines(*header) : std::string{};
  if (format == ReportFormat::Csv) {
    out += "phase,evaluation,value";
    std::vector<Parameter> params;
    if (!result.trace.empty()) {
      for (const auto& [p, v] : result.trace.front().point) {
        params.push_back(p);
        out += "," + std::string(to_string(p));
      }
    }
    out += "\n";
    for (const auto& step : result.trace) {
      out += step.phase + "," + std::to_string(step.evaluation) + "," + format_general(step.value);
      for (Parameter p : params) out += "," + format_general(step.point.at(p));
      out += "\n";
    }
    out += "# best " + value_name + "=" + format_3dp(result.best_value) + " after " +
           std::to_string(result.evaluations) + " evaluations (" + std::to_string(result.skipped) + " skipped)\n";
    return out;
  }

  out += "best " + value_name + ": " + format_3dp(result.best_value) + "\n";
  out += "evaluations: " + std::to_string(result.evaluations) + " (" + std::to_string(result.skipped) + " skipped)\n";
  out += "best parameters: " + serialize_variant(result.best_parameters) + "\n";
  out += "improvements:\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& step : result.trace) {
    std::string point;
    for (const auto& [p, v] : step.point) {
      point += (point.empty() ? "" : " ") + std::string(to_string(p)) + "=" + format_general(v);
    }
    rows.push_back({step.phase, std::to_string(step.evaluation), format_3dp(step.value), point});
  }
  out += render_table({{"phase", true}, {"evaluation", false}, {value_name, false}, {"point", true}}, rows);
  return out;
}

}  // namespace wcv
