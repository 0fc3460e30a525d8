#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egvi/instances.hpp"

namespace egvi {

enum class SolverKind { kExtragradient, kProximalPoint };

std::string solver_name(SolverKind kind);

struct SolverConfig {
  double eta = 0.1;
  int T = 100;
  double inner_tol = 1e-12;
  int inner_max = 10000;
  bool record_half = true;
};

struct EgStep {
  Vector half;
  Vector next;
};

EgStep eg_step(const VIInstance& inst, double eta, const Vector& z);

// Proximal step by Picard iteration w <- Pi(z - eta F(w)) from w = z.
// Requires eta * L < 1.
Vector pp_step(const VIInstance& inst, double eta, const Vector& z, double inner_tol = 1e-12,
               int inner_max = 10000);

struct Trajectory {
  SolverKind kind;
  SolverConfig config;
  VIInstance instance;
  std::vector<Vector> iterates;              // z_0 .. z_T
  std::vector<Vector> half_iterates;         // z_{k+1/2}, EG with record_half only
  std::vector<Vector> operator_values;       // F(z_k)
  std::vector<Vector> half_operator_values;  // F(z_{k+1/2})
  std::vector<std::string> warnings;

  int steps() const { return static_cast<int>(iterates.size()) - 1; }
};

Trajectory eg_run(const VIInstance& inst, const SolverConfig& config, const Vector& z0);
Trajectory pp_run(const VIInstance& inst, const SolverConfig& config, const Vector& z0);

struct ReferenceSolution {
  Vector z;
  double residual = 0.0;  // natural residual at z
  long iterations = 0;
};

inline constexpr double kReferenceTolerance = 1e-11;
inline constexpr long kReferenceMaxIterations = 10'000'000;

// Long EG run from Pi(0) until the natural residual is at most tol.
ReferenceSolution solve_reference(const VIInstance& inst, double eta,
                                  double tol = kReferenceTolerance,
                                  long max_iter = kReferenceMaxIterations);

struct MeasureRow {
  int k = 0;
  double r_nat = 0.0;
  double r_tan = 0.0;
  std::optional<double> gap;
  std::optional<double> dist_half;  // ||z_k - z_{k+1/2}||
  std::optional<double> dist_full;  // ||z_k - z_{k+1}||
};

std::vector<MeasureRow> measure_series(const Trajectory& traj,
                                       std::optional<double> radius = std::nullopt);

// Argmin of the named series ("r_nat", "r_tan", "gap", "dist_half",
// "dist_full"); ties go to the smallest index. "gap" needs a radius.
int best_iterate_index(const Trajectory& traj, const std::string& measure,
                       std::optional<double> radius = std::nullopt);

// One row of a rate check: the bound reads lhs <= rhs, slack = rhs - lhs.
struct RateRow {
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct RateCheck {
  std::string name;
  std::string statement;
  bool applicable = true;
  std::string note;
  std::vector<RateRow> rows;
  double worst_slack = 0.0;
  double tolerance = 0.0;

  bool passed() const { return !applicable || worst_slack >= -tolerance; }
};

struct RateReport {
  SolverKind kind = SolverKind::kExtragradient;
  double eta = 0.0;
  double lipschitz = 0.0;
  double gamma = 0.0;
  double tolerance = 0.0;
  double dist0 = 0.0;   // ||z_0 - z*||
  double radius = 0.0;  // gap radius D
  Vector z_star;
  std::vector<RateCheck> checks;

  bool passed() const;
  const RateCheck* find(const std::string& name) const;
};

inline constexpr double kRateTolerance = 1e-8;

// radius defaults to 2 ||z_0 - z*||. Requires eta * L < 1.
RateReport rate_report_eg(const Trajectory& traj, const Vector& z_star,
                          std::optional<double> radius = std::nullopt);
RateReport rate_report_pp(const Trajectory& traj, const Vector& z_star,
                          std::optional<double> radius = std::nullopt);

}  // namespace egvi
