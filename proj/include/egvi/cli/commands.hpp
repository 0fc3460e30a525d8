#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "egvi/linalg.hpp"
#include "egvi/solvers.hpp"

namespace egvi::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

struct RunManifest {
  std::filesystem::path instance;
  SolverKind solver = SolverKind::kExtragradient;
  double eta = 0.1;
  int T = 100;
  std::optional<Vector> z0;      // defaults to the projection of the origin
  std::optional<double> radius;  // gap radius D, defaults to 2 ||z0 - z*||
  std::filesystem::path out_dir = ".";
  bool strict = false;  // treat eta * L >= 1 as an error
  std::uint64_t seed = 0;
};

struct CertificateOptions {
  std::optional<std::string> mutation;
  bool report_table = false;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
};

// Writes trajectory.csv, measures.csv, trajectory.json and rates.json.
int cmd_solve(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_counterexample(const std::string& name, std::ostream& out, std::ostream& err);
// Writes certificates.json.
int cmd_verify_certificates(const CertificateOptions& options, std::ostream& out, std::ostream& err);
// Writes rates.json.
int cmd_rates(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace egvi::cli
