#include <CLI11.hpp>
#include <iostream>

#include "egvi/cert/identities.hpp"
#include "egvi/cli/commands.hpp"
#include "egvi/cli/counterexamples.hpp"
#include "egvi/errors.hpp"
#include "egvi/io.hpp"

namespace {

struct RunFlags {
  std::string instance;
  std::string solver = "eg";
  std::string z0;
  double D = -1.0;
  egvi::cli::RunManifest manifest;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--instance", f.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--solver", f.solver, "Solver")->check(CLI::IsMember({"eg", "pp"}));
  cmd->add_option("--eta", f.manifest.eta, "Step size");
  cmd->add_option("--T", f.manifest.T, "Number of steps");
  cmd->add_option("--z0", f.z0, "Start point as comma-separated values (default: projection of 0)");
  cmd->add_option("--D", f.D, "Gap radius (default: 2 ||z0 - z*||)");
  cmd->add_option("--out", f.manifest.out_dir, "Output directory");
  cmd->add_flag("--strict", f.manifest.strict, "Fail when eta * L >= 1");
  cmd->add_option("--seed", f.manifest.seed, "Random seed");
}

egvi::cli::RunManifest finish(RunFlags& f) {
  egvi::cli::RunManifest m = f.manifest;
  m.instance = f.instance;
  m.solver = f.solver == "pp" ? egvi::SolverKind::kProximalPoint : egvi::SolverKind::kExtragradient;
  if (!f.z0.empty()) m.z0 = egvi::io::parse_csv_vector(f.z0);
  if (f.D >= 0.0) m.radius = f.D;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extragradient and proximal point diagnostics for monotone variational inequalities"};
  app.require_subcommand(1);

  RunFlags solve_flags, rate_flags;
  auto* solve = app.add_subcommand("solve", "Run a solver and write trajectory, measures and rate report");
  add_run_flags(solve, solve_flags);
  auto* rates = app.add_subcommand("rates", "Check the last-iterate rate bounds along a run");
  add_run_flags(rates, rate_flags);

  std::string cex_name;
  auto* cex = app.add_subcommand("counterexample", "Reproduce a non-monotone performance measure");
  cex->add_option("name", cex_name, "Counterexample")
      ->required()
      ->check(CLI::IsMember(egvi::cli::counterexample_names()));

  egvi::cli::CertificateOptions cert;
  std::string mutation;
  auto* verify = app.add_subcommand("verify-certificates", "Verify the polynomial identities exactly");
  verify->add_option("--mutate", mutation, "Drop or corrupt one identity term")
      ->check(CLI::IsMember(egvi::cert::mutation_names()));
  verify->add_flag("--report-table", cert.report_table, "Print per-monomial coefficient tables");
  verify->add_option("--out", cert.out_dir, "Output directory");
  verify->add_option("--seed", cert.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : egvi::cli::kExitError;
  }

  try {
    if (*solve) return egvi::cli::cmd_solve(finish(solve_flags), std::cout, std::cerr);
    if (*rates) return egvi::cli::cmd_rates(finish(rate_flags), std::cout, std::cerr);
    if (*cex) return egvi::cli::cmd_counterexample(cex_name, std::cout, std::cerr);
    if (!mutation.empty()) cert.mutation = mutation;
    return egvi::cli::cmd_verify_certificates(cert, std::cout, std::cerr);
  } catch (const egvi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return egvi::cli::kExitError;
  }
}
