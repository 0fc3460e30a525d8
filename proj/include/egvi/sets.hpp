#pragma once

#include <string>
#include <variant>
#include <vector>

#include "egvi/linalg.hpp"

namespace egvi {

// Relative tolerance for deciding that a face passes through a point:
// |<a, z> - b| <= tol * (1 + |b|).
inline constexpr double kActivityTolerance = 1e-9;
// Points are accepted as feasible when every scaled violation is below this.
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr int kMaxHalfspaceRows = 8;

struct WholeSpace {
  int n = 0;
};

struct NonnegativeOrthant {
  int n = 0;
};

// Bounds may be infinite.
struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

// {z : <normal, z> >= offset}
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct HalfspaceIntersection {
  int n = 0;
  std::vector<Halfspace> rows;
};

class FeasibleSet {
 public:
  using Variant = std::variant<WholeSpace, NonnegativeOrthant, Box, Ball, HalfspaceIntersection>;

  static FeasibleSet whole_space(int n);
  static FeasibleSet orthant(int n);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet ball(Vector center, double radius);
  // Throws EmptySetError when the rows admit no common point.
  static FeasibleSet halfspaces(int n, std::vector<Halfspace> rows);

  int dimension() const;
  const Variant& variant() const { return variant_; }
  std::string kind() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&variant_);
  }

 private:
  explicit FeasibleSet(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

struct ConeActivity {
  std::vector<int> active_rows;
  double activity_tolerance = kActivityTolerance;
};

ConeActivity cone_activity(const HalfspaceIntersection& set, const Vector& z,
                           double tolerance = kActivityTolerance);

// Largest scaled constraint violation of z; 0 when z is feasible.
double infeasibility(const FeasibleSet& set, const Vector& z);
bool is_feasible(const FeasibleSet& set, const Vector& z, double tol = kFeasibilityTolerance);
// Throws InfeasiblePointError naming `what` when z is not feasible.
void require_feasible(const FeasibleSet& set, const Vector& z, const std::string& what);

Vector project(const FeasibleSet& set, const Vector& p);
Vector project_tangent_cone(const FeasibleSet& set, const Vector& z, const Vector& v);
Vector project_normal_cone(const FeasibleSet& set, const Vector& z, const Vector& v);

struct LinearMinResult {
  Vector minimizer;
  double value = 0.0;
};

// Minimizes <cost, z'> over the set intersected with the ball B(center, radius).
// Supported for whole space, orthant and box.
LinearMinResult linear_min_over_set_ball(const FeasibleSet& set, const Vector& center,
                                         double radius, const Vector& cost);

struct PolyhedronProjection {
  Vector point;
  std::vector<int> active_set;
};

// Euclidean projection onto {z : <a_i, z> >= b_i} by enumerating active sets.
// Exposed for the cone routes of the tangent residual.
PolyhedronProjection project_polyhedron(const std::vector<Halfspace>& rows, const Vector& p);

}  // namespace egvi
