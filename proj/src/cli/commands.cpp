#include "egvi/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include "egvi/cert/report.hpp"
#include "egvi/cli/counterexamples.hpp"
#include "egvi/errors.hpp"
#include "egvi/io.hpp"
#include "egvi/sets.hpp"

namespace egvi::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const char* name) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
  return f;
}

struct PreparedRun {
  VIInstance instance;
  Vector z0;
};

PreparedRun prepare(const RunManifest& m, std::ostream& err) {
  VIInstance inst = io::load_instance(m.instance);
  Vector z0 = m.z0 ? *m.z0 : project(inst.set(), Vector::Zero(inst.dimension()));
  if (z0.size() != inst.dimension()) throw DimensionError("z0", inst.dimension(), z0.size());
  if (!(m.eta > 0.0)) throw InvalidArgumentError("eta must be positive");
  if (m.T < 0) throw InvalidArgumentError("T must be nonnegative");
  if (m.radius && *m.radius < 0.0) throw InvalidArgumentError("D must be nonnegative");
  const double eta_l = m.eta * inst.op().lipschitz();
  if (eta_l >= 1.0) {
    std::string msg = "precondition eta * L < 1 violated: eta * L = " + io::format_double(eta_l);
    if (m.strict) throw PreconditionError(msg);
    err << "warning: " << msg << '\n';
  }
  return {std::move(inst), std::move(z0)};
}

Trajectory run(const RunManifest& m, const PreparedRun& p) {
  SolverConfig config;
  config.eta = m.eta;
  config.T = m.T;
  return m.solver == SolverKind::kExtragradient ? eg_run(p.instance, config, p.z0) : pp_run(p.instance, config, p.z0);
}

Vector reference_point(const VIInstance& inst) {
  const double l = inst.op().lipschitz();
  return solve_reference(inst, l > 0.0 ? 0.5 / l : 1.0).z;
}

RateReport report_for(const Trajectory& traj, const Vector& z_star, std::optional<double> radius) {
  return traj.kind == SolverKind::kExtragradient ? rate_report_eg(traj, z_star, radius)
                                                 : rate_report_pp(traj, z_star, radius);
}

void print_report_summary(std::ostream& out, const RateReport& report) {
  for (const auto& c : report.checks) {
    out << "  " << c.name << ": ";
    if (!c.applicable)
      out << "n/a (" << c.note << ")";
    else
      out << (c.passed() ? "pass" : "FAIL") << ", worst slack " << io::format_double(c.worst_slack);
    out << '\n';
  }
}

// Runs `body`, mapping library errors to exit code 1.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int cmd_solve(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PreparedRun prepared = prepare(manifest, err);
    Trajectory traj = run(manifest, prepared);
    for (const auto& w : traj.warnings) err << "warning: " << w << '\n';

    std::optional<RateReport> report;
    std::optional<double> radius = manifest.radius;
    if (manifest.eta * prepared.instance.op().lipschitz() < 1.0) {
      report = report_for(traj, reference_point(prepared.instance), manifest.radius);
      radius = report->radius;
    }
    auto rows = measure_series(traj, radius);
    {
      auto f = open_output(manifest.out_dir, "trajectory.csv");
      io::write_trajectory_csv(f, traj);
    }
    {
      auto f = open_output(manifest.out_dir, "measures.csv");
      io::write_measures_csv(f, rows);
    }
    {
      auto f = open_output(manifest.out_dir, "trajectory.json");
      f << io::trajectory_to_json(traj, rows).dump(2) << '\n';
    }
    out << solver_name(manifest.solver) << ": " << traj.steps() << " steps, final r_tan "
        << io::format_double(rows.back().r_tan) << '\n';
    if (!report) {
      out << "rate report skipped (eta * L >= 1)\n";
      return kExitOk;
    }
    {
      auto f = open_output(manifest.out_dir, "rates.json");
      f << io::rate_report_to_json(*report).dump(2) << '\n';
    }
    print_report_summary(out, *report);
    return report->passed() ? kExitOk : kExitCheckFailed;
  });
}

int cmd_counterexample(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CounterexampleResult result = run_counterexample(name);
    print_counterexample(out, result);
    return result.passed() ? kExitOk : kExitCheckFailed;
  });
}

int cmd_verify_certificates(const CertificateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    cert::SuiteOptions suite;
    suite.seed = options.seed;
    suite.mutation = options.mutation;
    cert::SuiteResult result = cert::run_certificate_suite(suite);
    if (options.mutation) out << "mutation: " << *options.mutation << '\n';
    cert::print_summary(out, result);
    if (options.report_table)
      for (cert::Branch b : {cert::Branch::kNonneg, cert::Branch::kNeg})
        cert::print_coefficient_table(out, cert::coefficient_table(b));
    {
      auto f = open_output(options.out_dir, "certificates.json");
      f << cert::to_json(result).dump(2) << '\n';
    }
    if (result.all_passed()) return kExitOk;
    for (const auto& c : result.checks)
      if (!c.holds)
        err << "identity " << c.identity_name << " (" << c.branch << ") failed"
            << (c.first_difference ? ": " + *c.first_difference : std::string()) << '\n';
    return kExitCheckFailed;
  });
}

int cmd_rates(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunManifest strict = manifest;
    strict.strict = true;  // the bounds only hold for eta * L < 1
    PreparedRun prepared = prepare(strict, err);
    Trajectory traj = run(strict, prepared);
    RateReport report = report_for(traj, reference_point(prepared.instance), manifest.radius);
    {
      auto f = open_output(manifest.out_dir, "rates.json");
      f << io::rate_report_to_json(report).dump(2) << '\n';
    }
    out << solver_name(manifest.solver) << " rate report, T = " << traj.steps() << ", D = "
        << io::format_double(report.radius) << '\n';
    print_report_summary(out, report);
    return report.passed() ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace egvi::cli
