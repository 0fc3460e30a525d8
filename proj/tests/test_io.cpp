#include <doctest.h>

#include <cmath>
#include <sstream>

#include "egvi/errors.hpp"
#include "egvi/io.hpp"
#include "egvi/solvers.hpp"

using namespace egvi;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("set schema round trip") {
  const char* texts[] = {
      R"({"type":"rn","n":3})",
      R"({"type":"orthant","n":2})",
      R"({"type":"box","l":[0,"-inf"],"u":[1,"inf"]})",
      R"({"type":"ball","center":[1,2],"radius":0.5})",
      R"({"type":"halfspaces","rows":[{"a":[1,0],"b":0},{"a":[1,1],"b":-1}]})",
  };
  for (const char* t : texts) {
    FeasibleSet set = io::set_from_json(json::parse(t));
    CHECK(io::set_to_json(set) == io::set_to_json(io::set_from_json(io::set_to_json(set))));
  }
  auto box = io::set_from_json(json::parse(R"({"type":"box","l":[0,null],"u":[1,null]})"));
  CHECK(std::isinf(box.get_if<Box>()->lower(1)));
  CHECK(box.get_if<Box>()->upper(1) > 0);
  CHECK_THROWS_AS(io::set_from_json(json::parse(R"({"type":"simplex","n":2})")), InvalidArgumentError);
  CHECK_THROWS_AS(io::set_from_json(json::parse(R"({"type":"orthant"})")), InvalidArgumentError);
}

TEST_CASE("instance schema") {
  auto inst = io::instance_from_json(json::parse(R"({
    "operator": {"type": "bilinear", "A": [[1, 2], [1, 1]], "b": [1, 1], "c": [1, 1]},
    "set": {"type": "box", "l": [0, 0, 0, 0], "u": [10, 10, 10, 10]},
    "dimension": 4})"));
  REQUIRE(inst.bilinear().has_value());
  CHECK(inst.op().matrix()(2, 0) == -1.0);
  auto again = io::instance_from_json(io::instance_to_json(inst));
  CHECK(again.op().matrix() == inst.op().matrix());
  CHECK(again.op().offset() == inst.op().offset());

  auto affine = io::instance_from_json(json::parse(R"({
    "operator": {"type": "affine", "M": [[1, 0], [0, 2]], "q": [0.1, -3]},
    "set": {"type": "orthant", "n": 2}})"));
  CHECK(affine.op().lipschitz() == doctest::Approx(2.0));

  CHECK_THROWS_AS(io::instance_from_json(json::parse(R"({
    "operator": {"type": "affine", "M": [[1, 0], [0, 2]], "q": [0.1, -3]},
    "set": {"type": "orthant", "n": 2}, "dimension": 3})")),
                  DimensionError);
  CHECK_THROWS_AS(io::instance_from_json(json::parse(R"({
    "operator": {"type": "bilinear", "A": [[1]], "b": [1], "c": [1]},
    "set": {"type": "orthant", "n": 2}})")),
                  InvalidArgumentError);
}

TEST_CASE("doubles are written in full precision") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  Vector v = io::parse_csv_vector("1, 2.5,-3e-2");
  REQUIRE(v.size() == 3);
  CHECK(v(2) == -0.03);
  CHECK_THROWS_AS(io::parse_csv_vector("1,x"), InvalidArgumentError);
}

TEST_CASE("trajectory and measure CSV layout") {
  VIInstance inst(AffineOperator(Matrix::Identity(2, 2), Vector::Zero(2)), FeasibleSet::whole_space(2));
  SolverConfig config;
  config.eta = 0.5;
  config.T = 2;
  Vector z0(2);
  z0 << 1, 2;
  auto traj = eg_run(inst, config, z0);
  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj);
  std::istringstream lines(csv.str());
  std::string header, row0, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row0);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "k,z0,z1,half0,half1");
  CHECK(row0 == "0,1,2,0.5,1");
  CHECK(row2 == "2,0.5625,1.125,,");

  std::ostringstream mcsv;
  io::write_measures_csv(mcsv, measure_series(traj));
  std::string mheader = mcsv.str().substr(0, mcsv.str().find('\n'));
  CHECK(mheader == "k,r_nat,r_tan,gap,dist_half,dist_full");

  json j = io::trajectory_to_json(traj, measure_series(traj));
  CHECK(j["iterates"].size() == 3);
  CHECK(j["half_iterates"].size() == 2);
  CHECK(j["config"]["eta"] == 0.5);
}

}  // TEST_SUITE
