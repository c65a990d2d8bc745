#pragma once

#include <optional>
#include <span>
#include <string>

#include "wcvariant/analysis.hpp"

namespace wcv {

enum class ReportFormat { Table, Csv, Json };

/// Ranking: rank column (table only), worst-case summary. Detail: per-axle forces and
/// components, rows in the given (catalog) order.
enum class ReportStyle { Ranking, Detail };

ReportFormat parse_report_format(std::string_view text);

/// Provenance block written ahead of the rows.
struct ReportHeader {
  std::string tool_version;
  UseCaseKind kind = UseCaseKind::LossFront;
  LateralModel model = LateralModel::Decoupled;
  Scenario scenario;
};

/// Half-away-from-zero rounding to three decimals, e.g. 0.5215 -> "0.522".
std::string format_3dp(double value);

/// Deterministic report. Rows keep the given order. Characteristic values
/// are shown at three decimals; JSON also carries full-precision values.
std::string serialize_report(std::span<const Assessment> assessments, ReportFormat format,
                             const std::optional<ReportHeader>& header = std::nullopt,
                             ReportStyle style = ReportStyle::Ranking);

/// Name of the characteristic reported for a use-case: P_mu_FA, P_mu_RA or P_acc.
std::string_view characteristic_name(UseCaseKind kind);

std::string serialize_search_result(const SearchResult& result, ReportFormat format,
                                    const std::optional<ReportHeader>& header = std::nullopt);

}  // namespace wcv
