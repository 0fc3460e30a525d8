#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "egvi/instances.hpp"
#include "egvi/solvers.hpp"

namespace egvi::io {

using nlohmann::json;

// Infinite bounds are written as the strings "inf" / "-inf"; null is read as
// the unbounded side.
FeasibleSet set_from_json(const json& j);
json set_to_json(const FeasibleSet& set);

VIInstance instance_from_json(const json& j);
json instance_to_json(const VIInstance& inst);
VIInstance load_instance(const std::filesystem::path& path);

Vector vector_from_json(const json& j, const char* field);
json vector_to_json(const Vector& v);

// "1,2.5,-3" -> (1, 2.5, -3)
Vector parse_csv_vector(const std::string& text);

// 17 significant digits.
std::string format_double(double x);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_measures_csv(std::ostream& out, const std::vector<MeasureRow>& rows);
json trajectory_to_json(const Trajectory& traj, const std::vector<MeasureRow>& rows);
json rate_report_to_json(const RateReport& report);

}  // namespace egvi::io
