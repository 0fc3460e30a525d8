#include "egvi/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "egvi/errors.hpp"
#include "egvi/measures.hpp"

namespace egvi {

namespace {

void require_step_size(double eta) {
  if (!(eta > 0) || !std::isfinite(eta)) throw InvalidArgumentError("step size eta must be positive");
}

std::string eta_l_message(double eta, double lipschitz) {
  std::ostringstream out;
  out.precision(17);
  out << "eta * L = " << eta * lipschitz << " is not below 1 (eta = " << eta
      << ", L = " << lipschitz << ")";
  return out.str();
}

void check_run_inputs(const VIInstance& inst, const SolverConfig& config, const Vector& z0) {
  require_step_size(config.eta);
  if (config.T < 0) throw InvalidArgumentError("iteration count T must be nonnegative");
  if (z0.size() != inst.dimension()) throw DimensionError("z0", inst.dimension(), z0.size());
  require_feasible(inst.set(), z0, "z0");
}

std::optional<double> try_gap(const VIInstance& inst, const Vector& z, double radius) {
  try {
    return gap(inst, z, radius);
  } catch (const UnsupportedSetError&) {
    return std::nullopt;
  }
}

// Builds a check from parallel lhs/rhs series.
RateCheck make_check(std::string name, std::string statement, double tolerance) {
  RateCheck c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.tolerance = tolerance;
  return c;
}

void add_row(RateCheck& c, int k, double lhs, double rhs) {
  double slack = rhs - lhs;
  c.worst_slack = c.rows.empty() ? slack : std::min(c.worst_slack, slack);
  c.rows.push_back({k, lhs, rhs, slack});
}

RateCheck not_applicable(std::string name, std::string statement, double tolerance,
                         std::string note) {
  RateCheck c = make_check(std::move(name), std::move(statement), tolerance);
  c.applicable = false;
  c.note = std::move(note);
  return c;
}

struct RateContext {
  const Trajectory& traj;
  Vector z_star;
  double eta, lipschitz, gamma, dist0, radius;
  std::vector<double> r_tan;
  std::vector<std::optional<double>> gaps;
  bool gap_supported = true;
};

RateContext prepare(const Trajectory& traj, const Vector& z_star, std::optional<double> radius,
                    RateReport& report, double tolerance) {
  const VIInstance& inst = traj.instance;
  if (traj.iterates.empty()) throw InvalidArgumentError("trajectory has no iterates");
  if (z_star.size() != inst.dimension()) throw DimensionError("z_star", inst.dimension(), z_star.size());
  const double eta = traj.config.eta;
  const double lipschitz = inst.op().lipschitz();
  if (!(eta * lipschitz < 1.0))
    throw PreconditionError("rate report requires eta * L < 1: " + eta_l_message(eta, lipschitz));
  double residual = natural_residual(inst, z_star);
  if (residual > 1e-8)
    throw PreconditionError("z_star is not a solution to 1e-8 (natural residual " +
                            std::to_string(residual) + ")");

  RateContext ctx{traj, z_star, eta, lipschitz, inst.op().gamma(), 0.0, 0.0, {}, {}, true};
  ctx.dist0 = (traj.iterates.front() - z_star).norm();
  ctx.radius = radius ? *radius : 2.0 * ctx.dist0;
  if (ctx.radius < 0) throw InvalidArgumentError("gap radius must be nonnegative");
  for (const Vector& z : traj.iterates) {
    ctx.r_tan.push_back(tangent_residual(inst, z));
    auto g = ctx.gap_supported ? try_gap(inst, z, ctx.radius) : std::nullopt;
    if (!g) ctx.gap_supported = false;
    ctx.gaps.push_back(g);
  }

  report.eta = eta;
  report.lipschitz = lipschitz;
  report.gamma = ctx.gamma;
  report.tolerance = tolerance;
  report.dist0 = ctx.dist0;
  report.radius = ctx.radius;
  report.z_star = z_star;
  return ctx;
}

}  // namespace

std::string solver_name(SolverKind kind) {
  return kind == SolverKind::kExtragradient ? "eg" : "pp";
}

EgStep eg_step(const VIInstance& inst, double eta, const Vector& z) {
  require_step_size(eta);
  Vector half = project(inst.set(), z - eta * inst.eval(z));
  Vector next = project(inst.set(), z - eta * inst.eval(half));
  return {std::move(half), std::move(next)};
}

Vector pp_step(const VIInstance& inst, double eta, const Vector& z, double inner_tol,
               int inner_max) {
  require_step_size(eta);
  const double lipschitz = inst.op().lipschitz();
  if (!(eta * lipschitz < 1.0))
    throw PreconditionError("proximal step requires eta * L < 1: " + eta_l_message(eta, lipschitz));
  Vector w = z;
  double residual = 0.0;
  for (int it = 0; it < inner_max; ++it) {
    Vector next = project(inst.set(), z - eta * inst.eval(w));
    residual = (next - w).norm();
    // next is itself an exact projection and, by contraction, has a fixed-point
    // residual of at most eta * L * residual. Large iterates can cycle one ulp
    // apart, so the tolerance never drops below a few ulps of the iterate.
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * next.norm();
    if (residual <= std::max(inner_tol, floor)) return next;
    w = std::move(next);
  }
  throw NonConvergenceError("proximal step fixed-point iteration", residual, inner_max);
}

Trajectory eg_run(const VIInstance& inst, const SolverConfig& config, const Vector& z0) {
  check_run_inputs(inst, config, z0);
  Trajectory traj{SolverKind::kExtragradient, config, inst, {}, {}, {}, {}, {}};
  if (!(config.eta * inst.op().lipschitz() < 1.0))
    traj.warnings.push_back(eta_l_message(config.eta, inst.op().lipschitz()) +
                            "; rate guarantees do not apply");
  traj.iterates.push_back(z0);
  traj.operator_values.push_back(inst.eval(z0));
  for (int k = 0; k < config.T; ++k) {
    const Vector& z = traj.iterates.back();
    Vector half = project(inst.set(), z - config.eta * traj.operator_values.back());
    Vector f_half = inst.eval(half);
    Vector next = project(inst.set(), z - config.eta * f_half);
    if (!next.allFinite()) {
      throw NonConvergenceError("extragradient iterate became non-finite at k = " +
                                    std::to_string(k),
                                std::numeric_limits<double>::infinity(), k);
    }
    if (config.record_half) {
      traj.half_iterates.push_back(std::move(half));
      traj.half_operator_values.push_back(f_half);
    }
    traj.operator_values.push_back(inst.eval(next));
    traj.iterates.push_back(std::move(next));
  }
  return traj;
}

Trajectory pp_run(const VIInstance& inst, const SolverConfig& config, const Vector& z0) {
  check_run_inputs(inst, config, z0);
  Trajectory traj{SolverKind::kProximalPoint, config, inst, {}, {}, {}, {}, {}};
  traj.iterates.push_back(z0);
  traj.operator_values.push_back(inst.eval(z0));
  for (int k = 0; k < config.T; ++k) {
    Vector next;
    try {
      next = pp_step(inst, config.eta, traj.iterates.back(), config.inner_tol, config.inner_max);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError("proximal step at k = " + std::to_string(k), e.residual(),
                                e.iterations());
    }
    traj.operator_values.push_back(inst.eval(next));
    traj.iterates.push_back(std::move(next));
  }
  return traj;
}

ReferenceSolution solve_reference(const VIInstance& inst, double eta, double tol, long max_iter) {
  require_step_size(eta);
  if (!(eta * inst.op().lipschitz() < 1.0))
    throw PreconditionError("reference solve requires eta * L < 1: " +
                            eta_l_message(eta, inst.op().lipschitz()));
  const Matrix& m = inst.op().matrix();
  const Vector& q = inst.op().offset();
  Vector z = project(inst.set(), Vector::Zero(inst.dimension()));
  Vector half(z.size()), f(z.size());
  constexpr long kCheckEvery = 50;
  double best = std::numeric_limits<double>::infinity();
  Vector best_z = z;
  for (long it = 0;; ++it) {
    if (it % kCheckEvery == 0 || it == max_iter) {
      double r = natural_residual(inst, z);
      if (r < best) {
        best = r;
        best_z = z;
      }
      if (r <= tol) return {z, r, it};
      if (it >= max_iter || !std::isfinite(r)) break;
    }
    f.noalias() = m * z;
    f += q;
    half = project(inst.set(), z - eta * f);
    f.noalias() = m * half;
    f += q;
    z = project(inst.set(), z - eta * f);
  }
  throw NonConvergenceError("reference solution did not reach tolerance", best, max_iter);
}

std::vector<MeasureRow> measure_series(const Trajectory& traj, std::optional<double> radius) {
  std::vector<MeasureRow> rows;
  const VIInstance& inst = traj.instance;
  bool gap_supported = radius.has_value();
  for (int k = 0; k <= traj.steps(); ++k) {
    const Vector& z = traj.iterates[k];
    MeasureRow row;
    row.k = k;
    Vector f = traj.operator_values[k];
    row.r_nat = (z - project(inst.set(), z - f)).norm();
    row.r_tan = project_tangent_cone(inst.set(), z, -f).norm();
    if (gap_supported) {
      row.gap = try_gap(inst, z, *radius);
      gap_supported = row.gap.has_value();
    }
    if (k < traj.steps()) {
      if (k < static_cast<int>(traj.half_iterates.size()))
        row.dist_half = (z - traj.half_iterates[k]).norm();
      row.dist_full = (z - traj.iterates[k + 1]).norm();
    }
    rows.push_back(row);
  }
  return rows;
}

int best_iterate_index(const Trajectory& traj, const std::string& measure,
                       std::optional<double> radius) {
  if (traj.iterates.empty()) throw InvalidArgumentError("trajectory has no iterates");
  std::function<std::optional<double>(const MeasureRow&)> pick;
  if (measure == "r_nat") {
    pick = [](const MeasureRow& r) { return std::optional<double>(r.r_nat); };
  } else if (measure == "r_tan") {
    pick = [](const MeasureRow& r) { return std::optional<double>(r.r_tan); };
  } else if (measure == "gap") {
    if (!radius) throw InvalidArgumentError("the gap series needs a radius");
    pick = [](const MeasureRow& r) { return r.gap; };
  } else if (measure == "dist_half") {
    pick = [](const MeasureRow& r) { return r.dist_half; };
  } else if (measure == "dist_full") {
    pick = [](const MeasureRow& r) { return r.dist_full; };
  } else {
    throw UnknownMeasureError("unknown measure '" + measure + "'");
  }
  int best = -1;
  double best_value = 0.0;
  for (const MeasureRow& row : measure_series(traj, measure == "gap" ? radius : std::nullopt)) {
    auto v = pick(row);
    if (!v) continue;
    if (best < 0 || *v < best_value) {
      best = row.k;
      best_value = *v;
    }
  }
  if (best < 0) throw InvalidArgumentError("measure '" + measure + "' has no values on this trajectory");
  return best;
}

bool RateReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RateCheck& c) { return c.passed(); });
}

const RateCheck* RateReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

RateReport rate_report_eg(const Trajectory& traj, const Vector& z_star,
                          std::optional<double> radius) {
  if (traj.kind != SolverKind::kExtragradient)
    throw InvalidArgumentError("rate_report_eg needs an extragradient trajectory");
  if (static_cast<int>(traj.half_iterates.size()) != traj.steps())
    throw InvalidArgumentError("rate_report_eg needs recorded half-iterates");
  RateReport report;
  report.kind = SolverKind::kExtragradient;
  const double tol = kRateTolerance;
  RateContext ctx = prepare(traj, z_star, radius, report, tol);
  const auto& z = traj.iterates;
  const auto& h = traj.half_iterates;
  const int T = traj.steps();
  const double eta = ctx.eta, el = ctx.eta * ctx.lipschitz;
  const double sq = std::sqrt(1.0 - el * el);

  RateCheck dist = make_check("distance_decrease",
                              "|z_k - z*|^2 >= |z_{k+1} - z*|^2 + (1 - eta^2 L^2) |z_k - z_{k+1/2}|^2",
                              tol);
  RateCheck contraction = make_check("half_step_contraction",
                                     "|z_{k+1/2} - z_{k+1}| <= eta L |z_k - z_{k+1/2}|", tol);
  RateCheck tan_step = make_check("tangent_by_step",
                                  "r_tan(z_{k+1}) <= (1 + eta L + (eta L)^2) |z_k - z_{k+1/2}| / eta",
                                  tol);
  RateCheck tan_mono = make_check("tangent_monotone", "r_tan(z_{k+1}) <= r_tan(z_k)", tol);
  RateCheck best = make_check("best_iterate",
                              "min_{t<k} |z_t - z_{t+1/2}|^2 <= |z_0 - z*|^2 / (k (1 - (eta L)^2))",
                              tol);
  double best_step2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < T; ++k) {
    double step = (z[k] - h[k]).norm();
    add_row(dist, k, (z[k + 1] - z_star).squaredNorm() + (1.0 - el * el) * step * step,
            (z[k] - z_star).squaredNorm());
    add_row(contraction, k, (h[k] - z[k + 1]).norm(), el * step);
    add_row(tan_step, k, ctx.r_tan[k + 1], (1.0 + el + el * el) * step / eta);
    add_row(tan_mono, k, ctx.r_tan[k + 1], ctx.r_tan[k]);
    best_step2 = std::min(best_step2, step * step);
    add_row(best, k + 1, best_step2, ctx.dist0 * ctx.dist0 / ((k + 1) * (1.0 - el * el)));
  }
  report.checks = {dist, contraction, tan_step, tan_mono, best};

  const std::string gap_statement = "Gap(z_k) <= 3 D |z_0 - z*| / (eta sqrt(1 - (eta L)^2) sqrt(k))";
  const std::string linear_statement =
      "Gap(z_{k+1}) <= (1 + 2 eta gamma (1 - eta L)^2)^(-k/2) 3 D |z_0 - z*| / (eta sqrt(1 - (eta L)^2))";
  const std::string by_gap_statement = "|z_k - z*|^2 <= Gap(z_k) / gamma";
  if (!ctx.gap_supported) {
    const std::string why = "gap is not supported on this set";
    report.checks.push_back(not_applicable("gap_last_iterate", gap_statement, tol, why));
    report.checks.push_back(not_applicable("gap_linear_rate", linear_statement, tol, why));
    report.checks.push_back(not_applicable("distance_by_gap", by_gap_statement, tol, why));
    return report;
  }
  const double base = 3.0 * ctx.radius * ctx.dist0 / (eta * sq);
  RateCheck last = make_check("gap_last_iterate", gap_statement, tol);
  for (int k = 1; k <= T; ++k) add_row(last, k, *ctx.gaps[k], base / std::sqrt(double(k)));
  report.checks.push_back(last);

  if (ctx.gamma > 0) {
    const double factor = 1.0 + 2.0 * eta * ctx.gamma * (1.0 - el) * (1.0 - el);
    RateCheck linear = make_check("gap_linear_rate", linear_statement, tol);
    for (int k = 0; k < T; ++k) add_row(linear, k + 1, *ctx.gaps[k + 1], std::pow(factor, -0.5 * k) * base);
    RateCheck by_gap = make_check("distance_by_gap", by_gap_statement, tol);
    for (int k = 0; k <= T; ++k) {
      double d = (z[k] - z_star).norm();
      if (d <= ctx.radius) add_row(by_gap, k, d * d, *ctx.gaps[k] / ctx.gamma);
    }
    report.checks.push_back(linear);
    report.checks.push_back(by_gap);
  } else {
    const std::string why = "operator is not strongly monotone (gamma <= 0)";
    report.checks.push_back(not_applicable("gap_linear_rate", linear_statement, tol, why));
    report.checks.push_back(not_applicable("distance_by_gap", by_gap_statement, tol, why));
  }
  return report;
}

RateReport rate_report_pp(const Trajectory& traj, const Vector& z_star,
                          std::optional<double> radius) {
  if (traj.kind != SolverKind::kProximalPoint)
    throw InvalidArgumentError("rate_report_pp needs a proximal point trajectory");
  RateReport report;
  report.kind = SolverKind::kProximalPoint;
  const double eta = traj.config.eta;
  const double lipschitz = traj.instance.op().lipschitz();
  // The bounds assume an exact proximal step.
  const double tol = kRateTolerance + 100.0 * (1.0 + lipschitz + 1.0 / eta) * traj.config.inner_tol;
  RateContext ctx = prepare(traj, z_star, radius, report, tol);
  const auto& z = traj.iterates;
  const int T = traj.steps();

  RateCheck dist = make_check("distance_decrease",
                              "|z_k - z*|^2 >= |z_{k+1} - z*|^2 + |z_{k+1} - z_k|^2", tol);
  RateCheck step_mono = make_check("step_monotone", "|z_{k+2} - z_{k+1}| <= |z_{k+1} - z_k|", tol);
  RateCheck step_rate = make_check("step_rate", "|z_k - z_{k-1}| <= |z_0 - z*| / sqrt(k)", tol);
  RateCheck tan_rate = make_check("tangent_rate", "r_tan(z_k)^2 <= |z_0 - z*|^2 / (eta^2 k)", tol);
  for (int k = 0; k < T; ++k) {
    double step = (z[k + 1] - z[k]).norm();
    add_row(dist, k, (z[k + 1] - z_star).squaredNorm() + step * step, (z[k] - z_star).squaredNorm());
    if (k + 2 <= T) add_row(step_mono, k, (z[k + 2] - z[k + 1]).norm(), step);
    add_row(step_rate, k + 1, step, ctx.dist0 / std::sqrt(double(k + 1)));
    add_row(tan_rate, k + 1, ctx.r_tan[k + 1] * ctx.r_tan[k + 1],
            ctx.dist0 * ctx.dist0 / (eta * eta * (k + 1)));
  }
  report.checks = {dist, step_mono, step_rate, tan_rate};

  const std::string gap_statement = "Gap(z_k) <= D |z_0 - z*| / (eta sqrt(k))";
  if (!ctx.gap_supported) {
    report.checks.push_back(
        not_applicable("gap_last_iterate", gap_statement, tol, "gap is not supported on this set"));
    return report;
  }
  RateCheck last = make_check("gap_last_iterate", gap_statement, tol);
  for (int k = 1; k <= T; ++k)
    add_row(last, k, *ctx.gaps[k], ctx.radius * ctx.dist0 / (eta * std::sqrt(double(k))));
  report.checks.push_back(last);
  return report;
}

}  // namespace egvi
