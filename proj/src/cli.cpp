#include "wcvariant/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "wcvariant/analysis.hpp"
#include "wcvariant/catalog_io.hpp"
#include "wcvariant/errors.hpp"
#include "wcvariant/forces.hpp"
#include "wcvariant/oracle.hpp"
#include "wcvariant/report.hpp"

#ifndef WCVARIANT_VERSION
#define WCVARIANT_VERSION "0.0.0"
#endif

namespace wcv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioFlags {
  std::string scenario_path;
  std::optional<double> mu;
  std::string radius;  // number or "straight"
  std::optional<double> speed_kph;
};

struct Options {
  std::string catalog_path;
  std::string box_path;
  std::string use_case = "loss-front";
  std::string model = "decoupled";
  std::string format = "table";
  std::string output_path;
  unsigned threads = 1;
  bool verify = false;
  int grid_points = SearchConfig{}.grid_points_per_dim;
  int refine_rounds = SearchConfig{}.refine_rounds;
  ScenarioFlags scenario;
};

void add_scenario_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario.scenario_path, "Scenario JSON file replacing the built-in scenario");
  cmd->add_option("--mu", o.scenario.mu, "Friction coefficient override");
  cmd->add_option("--radius-m", o.scenario.radius, "Curve radius override in meters, or 'straight'");
  cmd->add_option("--speed-kph", o.scenario.speed_kph, "Speed override in kph");
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--use-case", o.use_case, "loss-front | loss-rear | no-loss")
      ->required()
      ->check(CLI::IsMember({"loss-front", "loss-rear", "no-loss"}));
  cmd->add_option("--model", o.model, "Lateral force model")
      ->check(CLI::IsMember({"decoupled", "single-track"}))
      ->capture_default_str();
  cmd->add_option("--format", o.format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output_path, "Write the report to a file instead of standard output");
  cmd->add_option("--threads", o.threads, "Worker threads for evaluation")->check(CLI::Range(1u, 256u));
  add_scenario_flags(cmd, o);
}

UseCase build_use_case(const Options& o) {
  UseCase uc;
  uc.kind = parse_use_case_kind(o.use_case);
  const auto builtins = builtin_scenarios();
  uc.scenario = uc.kind == UseCaseKind::NoLossAccel ? builtins[1] : builtins[0];
  if (!o.scenario.scenario_path.empty()) {
    uc.scenario = parse_scenario(read_file(o.scenario.scenario_path));
  }
  if (o.scenario.mu) uc.scenario.mu = *o.scenario.mu;
  if (o.scenario.speed_kph) uc.scenario.frame.speed_mps = kph_to_mps(*o.scenario.speed_kph);
  if (!o.scenario.radius.empty()) {
    if (o.scenario.radius == "straight") {
      uc.scenario.frame.radius_m.reset();
    } else {
      double r = 0.0;
      try {
        std::size_t used = 0;
        r = std::stod(o.scenario.radius, &used);
        if (used != o.scenario.radius.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("--radius-m expects a number or 'straight', got '" + o.scenario.radius + "'");
      }
      uc.scenario.frame.radius_m = r;
    }
  }
  try {
    uc.validate();
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  return uc;
}

ReportHeader make_header(const UseCase& uc, LateralModel model) {
  return ReportHeader{WCVARIANT_VERSION, uc.kind, model, uc.scenario};
}

bool color_enabled(bool terminal) { return terminal && std::getenv("WCVARIANT_NO_COLOR") == nullptr; }

// Bold summary line for interactive table output.
std::string stylize(std::string report, bool color) {
  if (!color) return report;
  const std::string marker = "worst-case: ";
  const auto pos = report.rfind(marker);
  if (pos == std::string::npos || (pos != 0 && report[pos - 1] != '\n')) return report;
  const auto end = report.find('\n', pos);
  report.insert(end, "\x1b[0m");
  report.insert(pos, "\x1b[1m");
  return report;
}

// Closed-form single-track forces against the linear-system oracle.
double verify_single_track(std::span<const VehicleVariant> variants, const UseCase& uc, std::ostream& err) {
  double worst = 0.0;
  for (const auto& v : variants) {
    const auto geom = steering_geometry(uc.scenario.frame, v.l_fa_m, v.l_ra_m);
    const auto gears = present_gears(v);
    const AxlePair f_par = longitudinal_forces(axle_torques(v, gears.empty() ? 0 : gears.front()), v.r_dyn_m);
    const AxlePair closed = lateral_forces_single_track(v, uc.scenario.frame, geom, f_par);
    const AxlePair oracle = oracle_solve_forces(v, uc.scenario.frame, geom, f_par);
    const double scale = std::max({std::abs(oracle.fa), std::abs(oracle.ra), 1.0});
    const double dev = std::max(std::abs(closed.fa - oracle.fa), std::abs(closed.ra - oracle.ra)) / scale;
    worst = std::max(worst, dev);
  }
  err << "verify: single-track closed form vs oracle, max relative deviation " << worst << " over "
      << variants.size() << " variants\n";
  return worst;
}

}  // namespace

std::string version() { return WCVARIANT_VERSION; }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, bool terminal) {
  CLI::App app{"Worst-case variant selection for drivetrain hazard potentials", "wcvariant"};
  app.set_version_flag("--version", std::string("wcvariant ") + WCVARIANT_VERSION);
  app.require_subcommand(1);

  Options o;
  auto* analyze = app.add_subcommand("analyze", "Per-variant detail for a use-case, in catalog order");
  analyze->add_option("--catalog", o.catalog_path, "Catalog file (.json or .csv)")->required();
  add_common_flags(analyze, o);
  analyze->add_flag("--verify", o.verify, "Check single-track closed forms against the force-balance oracle");

  auto* rank = app.add_subcommand("rank", "Rank a catalog and name the worst-case variant");
  rank->add_option("--catalog", o.catalog_path, "Catalog file (.json or .csv)")->required();
  add_common_flags(rank, o);
  rank->add_flag("--verify", o.verify, "Check single-track closed forms against the force-balance oracle");

  auto* search = app.add_subcommand("search", "Search a parameter box for the worst-case combination");
  search->add_option("--box", o.box_path, "Parameter box JSON file")->required();
  add_common_flags(search, o);
  search->add_option("--grid-points", o.grid_points, "Grid points per free dimension")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  search->add_option("--refine-rounds", o.refine_rounds, "Shrinking refinement rounds")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check a catalog file and print diagnostics");
  validate_cmd->add_option("--catalog", o.catalog_path, "Catalog file (.json or .csv)")->required();

  auto* scenarios = app.add_subcommand("scenarios", "List the built-in scenarios");
  scenarios->add_option("--format", o.format, "table | json")->check(CLI::IsMember({"table", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "wcvariant " << WCVARIANT_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string report;
  try {
    if (validate_cmd->parsed()) {
      const Catalog catalog = load_catalog(o.catalog_path);
      int counts[3] = {0, 0, 0};
      for (const auto& v : catalog.variants) ++counts[static_cast<int>(drive_layout(v))];
      report = "ok: " + o.catalog_path + ": " + std::to_string(catalog.variants.size()) + " variants (FWD " +
               std::to_string(counts[0]) + ", RWD " + std::to_string(counts[1]) + ", AWD " +
               std::to_string(counts[2]) + ")\n";
    } else if (scenarios->parsed()) {
      const auto list = builtin_scenarios();
      if (o.format == "json") {
        report = "[\n";
        for (std::size_t i = 0; i < list.size(); ++i) {
          report += serialize_scenario(list[i]);
          report.pop_back();
          report += i + 1 < list.size() ? ",\n" : "\n";
        }
        report += "]\n";
      } else {
        for (const auto& s : list) {
          report += s.name + ": mu=" + format_3dp(s.mu) + " radius_m=" +
                    (s.frame.is_straight() ? std::string("straight") : format_3dp(*s.frame.radius_m)) +
                    " speed_kph=" + format_3dp(mps_to_kph(s.frame.speed_mps)) + " exposure=" + s.exposure_label + "\n";
        }
      }
    } else {
      const LateralModel model = parse_lateral_model(o.model);
      const ReportFormat format = parse_report_format(o.format);
      const UseCase uc = build_use_case(o);
      if (o.verify && model != LateralModel::SingleTrack) {
        throw UsageError("--verify requires --model single-track");
      }
      if (o.verify && uc.kind == UseCaseKind::NoLossAccel) {
        throw UsageError("--verify applies to the loss-of-traction use-cases");
      }
      const ReportHeader header = make_header(uc, model);

      if (search->parsed()) {
        const ParameterBox box = parse_parameter_box(read_file(o.box_path));
        const SearchConfig config{o.grid_points, o.refine_rounds, o.threads};
        report = serialize_search_result(worst_case_search(box, uc, model, config), format, header);
      } else {
        const Catalog catalog = load_catalog(o.catalog_path);
        if (catalog.variants.empty()) {
          throw Error(ErrorKind::EmptyCatalog, "catalog '" + o.catalog_path + "' contains no variants");
        }
        if (o.verify && verify_single_track(catalog.variants, uc, err) > 1e-9) {
          throw Error(ErrorKind::ValidationError, "closed-form lateral forces disagree with the oracle");
        }
        if (rank->parsed()) {
          const auto ranked = rank_catalog(catalog.variants, uc, model, o.threads);
          report = serialize_report(ranked, format, header, ReportStyle::Ranking);
          if (format == ReportFormat::Table) report = stylize(std::move(report), color_enabled(terminal && o.output_path.empty()));
        } else {
          std::vector<Assessment> rows;
          for (const auto& v : catalog.variants) rows.push_back(assess_variant(v, uc, model));
          report = serialize_report(rows, format, header, ReportStyle::Detail);
        }
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  if (o.output_path.empty()) {
    out << report;
    out.flush();
  } else {
    std::ofstream file(o.output_path, std::ios::binary);
    file << report;
    if (!file) {
      err << "error: cannot write '" << o.output_path << "'\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}

}  // namespace wcv::cli
