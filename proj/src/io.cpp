#include "egvi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "egvi/errors.hpp"

namespace egvi::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw InvalidArgumentError(std::string("missing field '") + name + "'");
  return j.at(name);
}

double bound_from_json(const json& j, double if_null, const char* name) {
  if (j.is_null()) return if_null;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  if (!j.is_number()) throw InvalidArgumentError(std::string("non-numeric entry in '") + name + "'");
  return j.get<double>();
}

Vector bounds_from_json(const json& j, double if_null, const char* name) {
  if (!j.is_array()) throw InvalidArgumentError(std::string("field '") + name + "' must be an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = bound_from_json(j[i], if_null, name);
  return v;
}

json bound_to_json(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

Matrix matrix_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.empty())
    throw InvalidArgumentError(std::string("field '") + name + "' must be a nonempty array of rows");
  const size_t rows = j.size(), cols = j[0].size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) throw InvalidArgumentError(std::string("row of '") + name + "' is not an array");
    if (j[r].size() != cols) throw DimensionError(std::string(name) + " row " + std::to_string(r), cols, j[r].size());
    for (size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

int positive_int(const json& j, const char* name) {
  if (!j.is_number_integer() || j.get<long>() <= 0)
    throw InvalidArgumentError(std::string("field '") + name + "' must be a positive integer");
  return j.get<int>();
}

}  // namespace

Vector vector_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw InvalidArgumentError(std::string("field '") + name + "' must be an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InvalidArgumentError(std::string("non-numeric entry in '") + name + "'");
    v[i] = j[i].get<double>();
  }
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (double x : v) out.push_back(bound_to_json(x));
  return out;
}

FeasibleSet set_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "rn") return FeasibleSet::whole_space(positive_int(field(j, "n"), "n"));
  if (type == "orthant") return FeasibleSet::orthant(positive_int(field(j, "n"), "n"));
  if (type == "box")
    return FeasibleSet::box(bounds_from_json(field(j, "l"), -kInf, "l"),
                            bounds_from_json(field(j, "u"), kInf, "u"));
  if (type == "ball")
    return FeasibleSet::ball(vector_from_json(field(j, "center"), "center"),
                             field(j, "radius").get<double>());
  if (type == "halfspaces") {
    const json& rows = field(j, "rows");
    if (!rows.is_array() || rows.empty())
      throw InvalidArgumentError("field 'rows' must be a nonempty array");
    std::vector<Halfspace> out;
    for (const json& row : rows)
      out.push_back({vector_from_json(field(row, "a"), "a"), field(row, "b").get<double>()});
    const int n = static_cast<int>(out.front().normal.size());
    return FeasibleSet::halfspaces(n, std::move(out));
  }
  throw InvalidArgumentError("unknown set type '" + type + "'");
}

json set_to_json(const FeasibleSet& set) {
  if (set.get_if<WholeSpace>()) return {{"type", "rn"}, {"n", set.dimension()}};
  if (set.get_if<NonnegativeOrthant>()) return {{"type", "orthant"}, {"n", set.dimension()}};
  if (const auto* s = set.get_if<Box>())
    return {{"type", "box"}, {"l", vector_to_json(s->lower)}, {"u", vector_to_json(s->upper)}};
  if (const auto* s = set.get_if<Ball>())
    return {{"type", "ball"}, {"center", vector_to_json(s->center)}, {"radius", s->radius}};
  const auto& s = *set.get_if<HalfspaceIntersection>();
  json rows = json::array();
  for (const auto& row : s.rows) rows.push_back({{"a", vector_to_json(row.normal)}, {"b", row.offset}});
  return {{"type", "halfspaces"}, {"rows", rows}};
}

VIInstance instance_from_json(const json& j) {
  const json& op = field(j, "operator");
  FeasibleSet set = set_from_json(field(j, "set"));
  const std::string type = field(op, "type").get<std::string>();
  std::optional<VIInstance> inst;
  if (type == "affine") {
    inst.emplace(AffineOperator(matrix_from_json(field(op, "M"), "M"), vector_from_json(field(op, "q"), "q")),
                 set);
  } else if (type == "bilinear") {
    Matrix a = matrix_from_json(field(op, "A"), "A");
    Vector b = vector_from_json(field(op, "b"), "b");
    Vector c = vector_from_json(field(op, "c"), "c");
    const auto* box = set.get_if<Box>();
    if (!box) throw InvalidArgumentError("bilinear operators need a box set (the product of the player boxes)");
    if (box->lower.size() != a.rows() + a.cols())
      throw DimensionError("set", a.rows() + a.cols(), box->lower.size());
    BilinearGameSpec spec{a, b, c, box->lower.head(a.rows()), box->upper.head(a.rows()),
                          box->lower.tail(a.cols()), box->upper.tail(a.cols())};
    inst.emplace(make_bilinear(spec));
  } else {
    throw InvalidArgumentError("unknown operator type '" + type + "'");
  }
  if (j.contains("dimension") && j.at("dimension").get<int>() != inst->dimension())
    throw DimensionError("dimension", inst->dimension(), j.at("dimension").get<int>());
  return *inst;
}

json instance_to_json(const VIInstance& inst) {
  json op;
  if (const auto& spec = inst.bilinear()) {
    op = {{"type", "bilinear"},
          {"A", matrix_to_json(spec->A)},
          {"b", vector_to_json(spec->b)},
          {"c", vector_to_json(spec->c)}};
  } else {
    op = {{"type", "affine"},
          {"M", matrix_to_json(inst.op().matrix())},
          {"q", vector_to_json(inst.op().offset())}};
  }
  return {{"operator", op}, {"set", set_to_json(inst.set())}, {"dimension", inst.dimension()}};
}

VIInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgumentError("instance file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw InvalidArgumentError("malformed instance file '" + path.string() + "': " + e.what());
  }
}

Vector parse_csv_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgumentError("cannot parse '" + item + "' as a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw InvalidArgumentError("cannot parse '" + item + "' as a number");
    values.push_back(v);
  }
  if (values.empty()) throw InvalidArgumentError("empty vector");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const int n = traj.instance.dimension();
  out << 'k';
  for (int i = 0; i < n; ++i) out << ",z" << i;
  bool halves = !traj.half_iterates.empty();
  if (halves)
    for (int i = 0; i < n; ++i) out << ",half" << i;
  out << '\n';
  for (int k = 0; k <= traj.steps(); ++k) {
    out << k;
    for (int i = 0; i < n; ++i) out << ',' << format_double(traj.iterates[k][i]);
    if (halves) {
      for (int i = 0; i < n; ++i) {
        out << ',';
        if (k < static_cast<int>(traj.half_iterates.size())) out << format_double(traj.half_iterates[k][i]);
      }
    }
    out << '\n';
  }
}

void write_measures_csv(std::ostream& out, const std::vector<MeasureRow>& rows) {
  auto cell = [&](const std::optional<double>& v) {
    out << ',';
    if (v) out << format_double(*v);
  };
  out << "k,r_nat,r_tan,gap,dist_half,dist_full\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.r_nat) << ',' << format_double(r.r_tan);
    cell(r.gap);
    cell(r.dist_half);
    cell(r.dist_full);
    out << '\n';
  }
}

json trajectory_to_json(const Trajectory& traj, const std::vector<MeasureRow>& rows) {
  json iterates = json::array(), halves = json::array(), series = json::array();
  for (const auto& z : traj.iterates) iterates.push_back(vector_to_json(z));
  for (const auto& h : traj.half_iterates) halves.push_back(vector_to_json(h));
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows)
    series.push_back({{"k", r.k},
                      {"r_nat", r.r_nat},
                      {"r_tan", r.r_tan},
                      {"gap", opt(r.gap)},
                      {"dist_half", opt(r.dist_half)},
                      {"dist_full", opt(r.dist_full)}});
  json warnings = traj.warnings;
  return {{"config",
           {{"solver", solver_name(traj.kind)},
            {"eta", traj.config.eta},
            {"T", traj.config.T},
            {"inner_tol", traj.config.inner_tol},
            {"inner_max", traj.config.inner_max},
            {"record_half", traj.config.record_half}}},
          {"instance", instance_to_json(traj.instance)},
          {"iterates", iterates},
          {"half_iterates", halves},
          {"measures", series},
          {"warnings", warnings}};
}

json rate_report_to_json(const RateReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json rows = json::array();
    for (const auto& r : c.rows)
      rows.push_back({{"k", r.k}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}});
    json entry = {{"name", c.name},
                  {"statement", c.statement},
                  {"applicable", c.applicable},
                  {"tolerance", c.tolerance},
                  {"passed", c.passed()},
                  {"rows", rows}};
    if (c.applicable && !c.rows.empty()) entry["worst_slack"] = c.worst_slack;
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(entry);
  }
  return {{"solver", solver_name(report.kind)},
          {"eta", report.eta},
          {"lipschitz", report.lipschitz},
          {"gamma", report.gamma},
          {"tolerance", report.tolerance},
          {"dist0", report.dist0},
          {"D", report.radius},
          {"z_star", vector_to_json(report.z_star)},
          {"passed", report.passed()},
          {"checks", checks}};
}

}  // namespace egvi::io
