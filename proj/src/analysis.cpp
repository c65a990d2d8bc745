#include "wcvariant/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>

#include "wcvariant/errors.hpp"

namespace wcv {

std::string_view to_string(UseCaseKind kind) {
  switch (kind) {
    case UseCaseKind::LossFront: return "loss-front";
    case UseCaseKind::LossRear: return "loss-rear";
    case UseCaseKind::NoLossAccel: return "no-loss";
  }
  return "?";
}

UseCaseKind parse_use_case_kind(std::string_view text) {
  if (text == "loss-front") return UseCaseKind::LossFront;
  if (text == "loss-rear") return UseCaseKind::LossRear;
  if (text == "no-loss") return UseCaseKind::NoLossAccel;
  throw Error(ErrorKind::InvalidParameter, "unknown use-case '" + std::string(text) + "'");
}

std::string_view to_string(LateralModel model) {
  return model == LateralModel::Decoupled ? "decoupled" : "single-track";
}

LateralModel parse_lateral_model(std::string_view text) {
  if (text == "decoupled") return LateralModel::Decoupled;
  if (text == "single-track") return LateralModel::SingleTrack;
  throw Error(ErrorKind::InvalidParameter, "unknown model '" + std::string(text) + "'");
}

void UseCase::validate() const {
  scenario.validate();
  const bool straight = scenario.frame.is_straight();
  if (kind == UseCaseKind::NoLossAccel && !straight) {
    throw Error(ErrorKind::InvalidParameter, "use-case no-loss requires a straight scenario");
  }
  if (kind != UseCaseKind::NoLossAccel && straight) {
    throw Error(ErrorKind::InvalidParameter, "use-case " + std::string(to_string(kind)) + " requires a curved scenario");
  }
}

Assessment assess_variant(const VehicleVariant& variant, const UseCase& use_case, LateralModel model) {
  use_case.validate();

  Assessment a;
  a.variant_name = variant.name;
  a.kind = use_case.kind;
  if (use_case.kind == UseCaseKind::NoLossAccel) {
    const AccPotential acc = acceleration_assessment(variant, FrictionContext{use_case.scenario.mu});
    a.value = acc.p_acc_total;
    a.gear = acc.gear;
    a.feasible = acc.feasible;
    a.detail = acc;
  } else {
    const MuPotential mu = loss_of_traction_assessment(variant, use_case.scenario, model);
    a.value = use_case.kind == UseCaseKind::LossFront ? mu.p_mu_fa : mu.p_mu_ra;
    a.gear = mu.gear;
    a.feasible = a.value < 1.0;
    a.detail = mu;
  }
  return a;
}

namespace {

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// failure by index is rethrown so errors are as deterministic as results.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Values equal to 12 significant digits compare as ties.
double ranking_key(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::vector<Assessment> rank_catalog(std::span<const VehicleVariant> catalog, const UseCase& use_case,
                                     LateralModel model, unsigned threads) {
  if (catalog.empty()) {
    throw Error(ErrorKind::EmptyCatalog, "catalog contains no variants");
  }
  use_case.validate();

  std::vector<Assessment> ranked(catalog.size());
  parallel_for(catalog.size(), threads,
               [&](std::size_t i) { ranked[i] = assess_variant(catalog[i], use_case, model); });

  std::vector<std::pair<double, std::size_t>> keys(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) keys[i] = {ranking_key(ranked[i].value), i};
  std::sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return ranked[x.second].variant_name < ranked[y.second].variant_name;
  });
  std::vector<Assessment> ordered;
  ordered.reserve(ranked.size());
  for (const auto& [key, i] : keys) ordered.push_back(std::move(ranked[i]));
  return ordered;
}

// --- parameter boxes -------------------------------------------------------

namespace {

constexpr Parameter kAllParameters[] = {
    Parameter::TMot,   Parameter::RDyn,    Parameter::IDiffFa, Parameter::IDiffRa,
    Parameter::LFa,    Parameter::LRa,     Parameter::MVeh,    Parameter::TMotFa,
    Parameter::RatioFa, Parameter::TMotRa, Parameter::RatioRa,
};

bool needs_single_engine(Parameter p) {
  return p == Parameter::TMot || p == Parameter::IDiffFa || p == Parameter::IDiffRa;
}

bool needs_dedicated_engines(Parameter p) {
  return p == Parameter::TMotFa || p == Parameter::RatioFa || p == Parameter::TMotRa || p == Parameter::RatioRa;
}

}  // namespace

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::TMot: return "t_mot_nm";
    case Parameter::RDyn: return "r_dyn_m";
    case Parameter::IDiffFa: return "i_diff_fa";
    case Parameter::IDiffRa: return "i_diff_ra";
    case Parameter::LFa: return "l_fa_m";
    case Parameter::LRa: return "l_ra_m";
    case Parameter::MVeh: return "m_veh_kg";
    case Parameter::TMotFa: return "engines.fa.t_mot_nm";
    case Parameter::RatioFa: return "engines.fa.i";
    case Parameter::TMotRa: return "engines.ra.t_mot_nm";
    case Parameter::RatioRa: return "engines.ra.i";
  }
  return "?";
}

Parameter parse_parameter(std::string_view text) {
  for (Parameter p : kAllParameters) {
    if (to_string(p) == text) return p;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown parameter '" + std::string(text) + "'");
}

namespace {

void check_layout(const VehicleVariant& v, Parameter p) {
  const bool single = v.has_single_engine();
  if ((needs_single_engine(p) && !single) || (needs_dedicated_engines(p) && single)) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(to_string(p)) + " does not exist for the drivetrain of '" + v.name + "'");
  }
}

}  // namespace

double get_parameter(const VehicleVariant& v, Parameter p) {
  check_layout(v, p);
  switch (p) {
    case Parameter::RDyn: return v.r_dyn_m;
    case Parameter::LFa: return v.l_fa_m;
    case Parameter::LRa: return v.l_ra_m;
    case Parameter::MVeh: return v.m_veh_kg;
    default: break;
  }
  if (needs_single_engine(p)) {
    const auto& s = std::get<SingleEngine>(v.drivetrain);
    return p == Parameter::TMot ? s.t_mot_nm : p == Parameter::IDiffFa ? s.i_diff_fa : s.i_diff_ra;
  }
  const auto& d = std::get<DedicatedEngines>(v.drivetrain);
  switch (p) {
    case Parameter::TMotFa: return d.fa.t_mot_nm;
    case Parameter::RatioFa: return d.fa.ratio;
    case Parameter::TMotRa: return d.ra.t_mot_nm;
    default: return d.ra.ratio;
  }
}

void set_parameter(VehicleVariant& v, Parameter p, double value) {
  check_layout(v, p);
  switch (p) {
    case Parameter::RDyn: v.r_dyn_m = value; return;
    case Parameter::LFa: v.l_fa_m = value; return;
    case Parameter::LRa: v.l_ra_m = value; return;
    case Parameter::MVeh: v.m_veh_kg = value; return;
    default: break;
  }
  if (needs_single_engine(p)) {
    auto& s = std::get<SingleEngine>(v.drivetrain);
    (p == Parameter::TMot ? s.t_mot_nm : p == Parameter::IDiffFa ? s.i_diff_fa : s.i_diff_ra) = value;
    return;
  }
  auto& d = std::get<DedicatedEngines>(v.drivetrain);
  switch (p) {
    case Parameter::TMotFa: d.fa.t_mot_nm = value; return;
    case Parameter::RatioFa: d.fa.ratio = value; return;
    case Parameter::TMotRa: d.ra.t_mot_nm = value; return;
    default: d.ra.ratio = value; return;
  }
}

void ParameterBox::validate() const {
  const bool single = base.has_single_engine();
  for (const auto& [p, range] : ranges) {
    const std::string name(to_string(p));
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) {
      throw Error(ErrorKind::InvalidParameter, "range for " + name + " must be finite");
    }
    if (range.lo > range.hi) {
      throw Error(ErrorKind::InvalidParameter, "range for " + name + " has lo > hi");
    }
    if ((needs_single_engine(p) && !single) || (needs_dedicated_engines(p) && single)) {
      throw Error(ErrorKind::InvalidParameter, name + " does not exist for the base drivetrain layout");
    }
  }
}

// --- worst-case search ------------------------------------------------------

namespace {

struct Dimension {
  Parameter parameter;
  double lo;
  double hi;
};

using Point = std::vector<double>;

// n points from lo to hi inclusive; the endpoints are exact.
std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    values[static_cast<std::size_t>(k)] =
        k == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return values;
}

std::vector<Point> factorial(const std::vector<std::vector<double>>& axes) {
  std::vector<Point> points{Point{}};
  for (const auto& axis : axes) {
    std::vector<Point> next;
    next.reserve(points.size() * axis.size());
    for (const auto& prefix : points) {
      for (double value : axis) {
        Point p = prefix;
        p.push_back(value);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

class Searcher {
 public:
  Searcher(const ParameterBox& box, const UseCase& use_case, LateralModel model, const SearchConfig& config)
      : box_(box), use_case_(use_case), model_(model), config_(config) {
    for (const auto& [p, range] : box.ranges) {
      if (range.is_fixed()) {
        set_parameter(base_, p, range.lo);
      } else {
        dims_.push_back({p, range.lo, range.hi});
      }
    }
  }

  SearchResult run() {
    std::vector<std::vector<double>> corners;
    for (const auto& d : dims_) corners.push_back({d.lo, d.hi});
    evaluate_batch("corner", factorial(corners));

    std::vector<std::vector<double>> grid;
    for (const auto& d : dims_) grid.push_back(linspace(d.lo, d.hi, config_.grid_points_per_dim));
    evaluate_batch("grid", factorial(grid));

    if (!best_point_) {
      throw Error(ErrorKind::NoFeasiblePoint,
                  "all " + std::to_string(result_.evaluations) + " samples violate variant invariants or constraints");
    }

    double shrink = 1.0;
    for (int round = 1; round <= config_.refine_rounds; ++round) {
      shrink *= 0.5;
      std::vector<std::vector<double>> axes;
      for (std::size_t i = 0; i < dims_.size(); ++i) {
        const auto& d = dims_[i];
        const double half = 0.5 * shrink * (d.hi - d.lo);
        const double centre = (*best_point_)[i];
        axes.push_back(linspace(std::max(d.lo, centre - half), std::min(d.hi, centre + half),
                                config_.grid_points_per_dim));
      }
      evaluate_batch("refine-" + std::to_string(round), factorial(axes));
    }

    result_.best_parameters = materialize(*best_point_);
    return result_;
  }

 private:
  VehicleVariant materialize(const Point& point) const {
    VehicleVariant v = base_;
    for (std::size_t i = 0; i < dims_.size(); ++i) set_parameter(v, dims_[i].parameter, point[i]);
    return v;
  }

  std::optional<double> evaluate(const Point& point) const {
    try {
      const VehicleVariant v = materialize(point);
      validate(v);
      const Assessment a = assess_variant(v, use_case_, model_);
      if (use_case_.kind == UseCaseKind::NoLossAccel && !a.feasible) return std::nullopt;
      if (!std::isfinite(a.value)) return std::nullopt;
      return a.value;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  void evaluate_batch(const std::string& phase, const std::vector<Point>& points) {
    std::vector<std::optional<double>> values(points.size());
    parallel_for(points.size(), config_.threads, [&](std::size_t i) { values[i] = evaluate(points[i]); });

    // Sequential merge in generation order keeps the result independent of threading.
    for (std::size_t i = 0; i < points.size(); ++i) {
      ++result_.evaluations;
      if (!values[i]) {
        ++result_.skipped;
        continue;
      }
      if (!best_point_ || *values[i] > result_.best_value) {
        best_point_ = points[i];
        result_.best_value = *values[i];
        SearchStep step{phase, result_.evaluations, *values[i], {}};
        for (std::size_t k = 0; k < dims_.size(); ++k) step.point[dims_[k].parameter] = points[i][k];
        result_.trace.push_back(std::move(step));
      }
    }
  }

  const ParameterBox& box_;
  const UseCase& use_case_;
  LateralModel model_;
  SearchConfig config_;
  VehicleVariant base_ = box_.base;
  std::vector<Dimension> dims_;
  std::optional<Point> best_point_;
  SearchResult result_;
};

}  // namespace

SearchResult worst_case_search(const ParameterBox& box, const UseCase& use_case, LateralModel model,
                               const SearchConfig& config) {
  box.validate();
  use_case.validate();
  if (config.grid_points_per_dim < 2) {
    throw Error(ErrorKind::InvalidParameter, "grid_points_per_dim must be at least 2");
  }
  if (config.refine_rounds < 0) {
    throw Error(ErrorKind::InvalidParameter, "refine_rounds must be non-negative");
  }
  std::size_t free_dims = 0;
  for (const auto& [p, range] : box.ranges) free_dims += range.is_fixed() ? 0 : 1;
  if (std::pow(static_cast<double>(config.grid_points_per_dim), static_cast<double>(free_dims)) > 2e7) {
    throw Error(ErrorKind::InvalidParameter, "grid too large: reduce free dimensions or grid points");
  }
  return Searcher(box, use_case, model, config).run();
}

}  // namespace wcv
