#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "egvi/cli/commands.hpp"
#include "egvi/cli/counterexamples.hpp"
#include "egvi/io.hpp"
#include "support.hpp"

using namespace egvi;
using namespace egvi::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("egvi_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_instance(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kZeroInstance = R"({"operator": {"type": "affine", "M": [[0, 0], [0, 0]], "q": [0, 0]},
                                "set": {"type": "orthant", "n": 2}})";
const char* kCex1Instance = R"({"operator": {"type": "bilinear", "A": [[1, 2], [1, 1]], "b": [1, 1], "c": [1, 1]},
                               "set": {"type": "box", "l": [0, 0, 0, 0], "u": [10, 10, 10, 10]}})";

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve on F = 0 writes constant outputs") {
  fs::path dir = scratch_dir("zero");
  RunManifest m;
  m.instance = write_instance(dir, "zero.json", kZeroInstance);
  m.z0 = vec({1, 2});
  m.T = 3;
  m.out_dir = dir / "out";
  std::ostringstream out, err;
  CHECK(cmd_solve(m, out, err) == kExitOk);
  std::string csv = slurp(m.out_dir / "trajectory.csv");
  CHECK(csv.find("3,1,2,,") != std::string::npos);
  for (const char* f : {"trajectory.csv", "measures.csv", "rates.json", "trajectory.json"})
    CHECK(fs::exists(m.out_dir / f));
  auto rates = nlohmann::json::parse(slurp(m.out_dir / "rates.json"));
  CHECK(rates["passed"] == true);
}

TEST_CASE("strict mode rejects eta L >= 1") {
  fs::path dir = scratch_dir("strict");
  RunManifest m;
  m.instance = write_instance(dir, "cex1.json", kCex1Instance);
  m.eta = 1.0;
  m.T = 2;
  m.strict = true;
  m.z0 = vec({0.3108455, 0.4825575, 0.4621875, 0.5768655});
  m.out_dir = dir / "out";
  std::ostringstream out, err;
  CHECK(cmd_solve(m, out, err) == kExitError);
  CHECK(err.str().find("eta * L < 1") != std::string::npos);

  m.strict = false;
  std::ostringstream out2, err2;
  CHECK(cmd_solve(m, out2, err2) == kExitOk);
  CHECK(err2.str().find("warning") != std::string::npos);
}

TEST_CASE("solve on the natural-residual counterexample") {
  fs::path dir = scratch_dir("cex1");
  RunManifest m;
  m.instance = write_instance(dir, "cex1.json", kCex1Instance);
  m.T = 2;
  m.z0 = vec({0.3108455, 0.4825575, 0.4621875, 0.5768655});
  m.out_dir = dir / "out";
  std::ostringstream out, err;
  CHECK(cmd_solve(m, out, err) == kExitOk);
  std::istringstream lines(slurp(m.out_dir / "measures.csv"));
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  std::stringstream cells(row);
  std::string k, r_nat;
  std::getline(cells, k, ',');
  std::getline(cells, r_nat, ',');
  CHECK(k == "0");
  double r = std::stod(r_nat);
  CHECK(std::abs(r * r - 0.15170013184049996) <= 1e-9);
}

TEST_CASE("solve output is byte-deterministic") {
  fs::path dir = scratch_dir("determinism");
  RunManifest m;
  m.instance = write_instance(dir, "cex1.json", kCex1Instance);
  m.T = 25;
  m.z0 = vec({0.3108455, 0.4825575, 0.4621875, 0.5768655});
  std::ostringstream out, err;
  m.out_dir = dir / "a";
  CHECK(cmd_solve(m, out, err) == kExitOk);
  m.out_dir = dir / "b";
  CHECK(cmd_solve(m, out, err) == kExitOk);
  for (const char* f : {"trajectory.csv", "measures.csv", "rates.json", "trajectory.json"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("operational errors map to exit 1") {
  fs::path dir = scratch_dir("errors");
  RunManifest m;
  m.instance = dir / "missing.json";
  m.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_solve(m, out, err) == kExitError);
  m.instance = write_instance(dir, "zero.json", kZeroInstance);
  m.z0 = vec({1, 2, 3});
  CHECK(cmd_solve(m, out, err) == kExitError);
  m.z0 = vec({-1, 2});
  CHECK(cmd_solve(m, out, err) == kExitError);
  CHECK(cmd_counterexample("nope", out, err) == kExitError);
}

TEST_CASE("counterexample command") {
  for (const char* name : {"natural-residual", "half-step-dist", "full-step-dist"}) {
    std::ostringstream out, err;
    CHECK_MESSAGE(cmd_counterexample(name, out, err) == kExitOk, out.str());
    CHECK(out.str().find("non-monotone: yes") != std::string::npos);
  }
  std::ostringstream out, err;
  int code = cmd_counterexample("gap", out, err);
  CHECK(code == (run_counterexample("gap").passed() ? kExitOk : kExitCheckFailed));
  CHECK(out.str().find("domain: [0,10]^2 per player") != std::string::npos);
}

TEST_CASE("verify-certificates command") {
  fs::path dir = scratch_dir("certs");
  CertificateOptions o;
  o.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_verify_certificates(o, out, err) == kExitOk);
  auto j = nlohmann::json::parse(slurp(dir / "certificates.json"));
  CHECK(j["passed"] == true);
  CHECK(j["checks"][0].contains("identity_name"));

  o.mutation = "sos-5";
  std::ostringstream out2, err2;
  CHECK(cmd_verify_certificates(o, out2, err2) == kExitCheckFailed);
  CHECK(err2.str().find("identity constrained (nonneg) failed: ") != std::string::npos);

  o.mutation.reset();
  o.report_table = true;
  std::ostringstream out3, err3;
  CHECK(cmd_verify_certificates(o, out3, err3) == kExitOk);
  CHECK(out3.str().find("monomial etaF(z_half)[1]*etaF(z_next)[1]") != std::string::npos);
}

TEST_CASE("rates command") {
  fs::path dir = scratch_dir("rates");
  std::ostringstream out, err;
  RunManifest zero;
  zero.instance = write_instance(dir, "zero.json", kZeroInstance);
  zero.out_dir = dir / "zero";
  CHECK(cmd_rates(zero, out, err) == kExitOk);

  egvi::testing::Rng rng(61);
  auto inst = egvi::testing::random_monotone_box(rng, 4);
  RunManifest box;
  box.instance = write_instance(dir, "box.json", io::instance_to_json(inst).dump());
  box.eta = 0.5 / inst.op().lipschitz();
  box.T = 500;
  box.out_dir = dir / "box";
  CHECK(cmd_rates(box, out, err) == kExitOk);

  Matrix m = Matrix::Identity(3, 3) + egvi::testing::random_skew(rng, 3, 0.3);
  VIInstance strong(AffineOperator(m, egvi::testing::random_vector(rng, 3)), FeasibleSet::orthant(3));
  RunManifest sm;
  sm.instance = write_instance(dir, "strong.json", io::instance_to_json(strong).dump());
  sm.eta = 0.5 / strong.op().lipschitz();
  sm.T = 100;
  sm.out_dir = dir / "strong";
  CHECK(cmd_rates(sm, out, err) == kExitOk);
  auto j = nlohmann::json::parse(slurp(sm.out_dir / "rates.json"));
  bool linear_rows = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "gap_linear_rate" && c["applicable"] == true && !c["rows"].empty()) linear_rows = true;
  CHECK(linear_rows);

  RunManifest pp = box;
  pp.solver = SolverKind::kProximalPoint;
  pp.T = 50;
  pp.out_dir = dir / "pp";
  CHECK(cmd_rates(pp, out, err) == kExitOk);

  box.eta = 2.0 / inst.op().lipschitz();
  CHECK(cmd_rates(box, out, err) == kExitError);
}

}  // TEST_SUITE
