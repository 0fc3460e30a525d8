#include "egvi/sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "egvi/errors.hpp"

namespace egvi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Tolerance for accepting an equality-constrained candidate as feasible.
constexpr double kCandidateTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dimension(const char* field, long expected, long actual) {
  if (expected != actual) throw DimensionError(field, expected, actual);
}

bool near_bound(double value, double bound, double tol = kActivityTolerance) {
  return std::isfinite(bound) && std::abs(value - bound) <= tol * (1.0 + std::abs(bound));
}

// Box view of the orthant and box variants.
struct Bounds {
  Vector lower;
  Vector upper;
};

Bounds orthant_bounds(int n) {
  return {Vector::Zero(n), Vector::Constant(n, kInf)};
}

// Subsets of {0..m-1} ordered by size, then lexicographically by index list.
std::vector<unsigned> ordered_subsets(int m) {
  std::vector<unsigned> masks(1u << m);
  for (unsigned s = 0; s < masks.size(); ++s) masks[s] = s;
  auto indices = [](unsigned mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
      if (mask & 1u) out.push_back(i);
    return out;
  };
  std::sort(masks.begin(), masks.end(), [&](unsigned a, unsigned b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return indices(a) < indices(b);
  });
  return masks;
}

const std::vector<unsigned>& subsets_for(int m) {
  static const std::vector<std::vector<unsigned>> table = [] {
    std::vector<std::vector<unsigned>> t;
    for (int k = 0; k <= kMaxHalfspaceRows; ++k) t.push_back(ordered_subsets(k));
    return t;
  }();
  return table.at(m);
}

bool satisfies_rows(const std::vector<Halfspace>& rows, const Vector& x) {
  for (const auto& row : rows) {
    double lhs = row.normal.dot(x);
    double scale = 1.0 + std::abs(row.offset) + row.normal.norm() * x.norm();
    if (lhs < row.offset - kCandidateTolerance * scale) return false;
  }
  return true;
}

Vector tangent_box(const Bounds& b, const Vector& z, const Vector& v) {
  Vector out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    bool at_lower = near_bound(z[i], b.lower[i]);
    bool at_upper = near_bound(z[i], b.upper[i]);
    if (at_lower && at_upper) {
      out[i] = 0.0;
    } else if (at_lower) {
      out[i] = std::max(v[i], 0.0);
    } else if (at_upper) {
      out[i] = std::min(v[i], 0.0);
    }
  }
  return out;
}

double box_infeasibility(const Bounds& b, const Vector& z) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i])) return kInf;
    if (std::isfinite(b.lower[i]))
      worst = std::max(worst, (b.lower[i] - z[i]) / (1.0 + std::abs(b.lower[i])));
    if (std::isfinite(b.upper[i]))
      worst = std::max(worst, (z[i] - b.upper[i]) / (1.0 + std::abs(b.upper[i])));
  }
  return worst;
}

LinearMinResult linear_min_box(const Bounds& b, const Vector& center, double radius,
                               const Vector& cost) {
  auto clip = [&](const Vector& x) {
    return Vector(x.cwiseMax(b.lower).cwiseMin(b.upper));
  };
  // Box minimizer ignoring the ball; inside the ball it is optimal.
  Vector corner = center;
  bool corner_finite = true;
  for (Eigen::Index i = 0; i < cost.size(); ++i) {
    if (cost[i] > 0) corner[i] = b.lower[i];
    if (cost[i] < 0) corner[i] = b.upper[i];
    corner_finite = corner_finite && std::isfinite(corner[i]);
  }
  if (corner_finite && (corner - center).norm() <= radius) return {corner, cost.dot(corner)};

  auto at = [&](double lambda) { return clip(center - cost / (2.0 * lambda)); };
  double lo = 1e-12, hi = 1e12;
  if ((at(lo) - center).norm() <= radius) {
    Vector z = at(lo);
    return {z, cost.dot(z)};
  }
  for (int it = 0; it < 200; ++it) {
    double mid = std::sqrt(lo * hi);
    if ((at(mid) - center).norm() <= radius) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  Vector z = at(hi);
  double dist = (z - center).norm();
  if (dist > radius) z = center + (z - center) * (radius / dist);
  return {z, cost.dot(z)};
}

}  // namespace

FeasibleSet FeasibleSet::whole_space(int n) {
  if (n <= 0) throw InvalidArgumentError("whole space dimension must be positive");
  return FeasibleSet(WholeSpace{n});
}

FeasibleSet FeasibleSet::orthant(int n) {
  if (n <= 0) throw InvalidArgumentError("orthant dimension must be positive");
  return FeasibleSet(NonnegativeOrthant{n});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() == 0) throw InvalidArgumentError("box dimension must be positive");
  check_dimension("box.u", lower.size(), upper.size());
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      std::ostringstream msg;
      msg << "box bounds must satisfy l <= u; coordinate " << i << " has l=" << lower[i]
          << " u=" << upper[i];
      throw InvalidArgumentError(msg.str());
    }
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (center.size() == 0) throw InvalidArgumentError("ball dimension must be positive");
  if (!(radius > 0) || !std::isfinite(radius))
    throw InvalidArgumentError("ball radius must be positive and finite");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::halfspaces(int n, std::vector<Halfspace> rows) {
  if (n <= 0) throw InvalidArgumentError("halfspace dimension must be positive");
  if (rows.size() > static_cast<size_t>(kMaxHalfspaceRows))
    throw InvalidArgumentError("at most 8 halfspace rows are supported");
  for (const auto& row : rows) {
    check_dimension("halfspaces.rows.a", n, row.normal.size());
    if (row.normal.norm() == 0.0) throw InvalidArgumentError("halfspace normal must be nonzero");
  }
  project_polyhedron(rows, Vector::Zero(n));  // throws when empty
  return FeasibleSet(HalfspaceIntersection{n, std::move(rows)});
}

int FeasibleSet::dimension() const {
  return std::visit(Overloaded{
                        [](const WholeSpace& s) { return s.n; },
                        [](const NonnegativeOrthant& s) { return s.n; },
                        [](const Box& s) { return static_cast<int>(s.lower.size()); },
                        [](const Ball& s) { return static_cast<int>(s.center.size()); },
                        [](const HalfspaceIntersection& s) { return s.n; },
                    },
                    variant_);
}

std::string FeasibleSet::kind() const {
  return std::visit(Overloaded{
                        [](const WholeSpace&) { return std::string("rn"); },
                        [](const NonnegativeOrthant&) { return std::string("orthant"); },
                        [](const Box&) { return std::string("box"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const HalfspaceIntersection&) { return std::string("halfspaces"); },
                    },
                    variant_);
}

PolyhedronProjection project_polyhedron(const std::vector<Halfspace>& rows, const Vector& p) {
  const int m = static_cast<int>(rows.size());
  if (m > kMaxHalfspaceRows) throw InvalidArgumentError("at most 8 halfspace rows are supported");
  const Eigen::Index n = p.size();

  bool found = false;
  PolyhedronProjection best;
  double best_dist2 = kInf;
  for (unsigned mask : subsets_for(m)) {
    std::vector<int> active;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) active.push_back(i);

    Vector x = p;
    if (!active.empty()) {
      Matrix a(active.size(), n);
      Vector rhs(active.size());
      for (size_t r = 0; r < active.size(); ++r) {
        a.row(r) = rows[active[r]].normal.transpose();
        rhs[r] = rows[active[r]].offset;
      }
      // Minimum-norm correction d solving a d = rhs - a p.
      Vector d = a.completeOrthogonalDecomposition().solve(rhs - a * p);
      x = p + d;
      double scale = 1.0 + rhs.cwiseAbs().maxCoeff() + a.norm() * x.norm();
      if ((a * x - rhs).cwiseAbs().maxCoeff() > 1e-10 * scale) continue;  // inconsistent face
    }
    if (!satisfies_rows(rows, x)) continue;
    double dist2 = (x - p).squaredNorm();
    if (!found || dist2 < best_dist2) {
      found = true;
      best_dist2 = dist2;
      best.point = x;
      best.active_set = active;
    }
  }
  if (!found) throw EmptySetError("halfspace intersection is empty");
  return best;
}

ConeActivity cone_activity(const HalfspaceIntersection& set, const Vector& z, double tolerance) {
  check_dimension("z", set.n, z.size());
  ConeActivity out;
  out.activity_tolerance = tolerance;
  for (size_t i = 0; i < set.rows.size(); ++i) {
    const auto& row = set.rows[i];
    if (std::abs(row.normal.dot(z) - row.offset) <= tolerance * (1.0 + std::abs(row.offset)))
      out.active_rows.push_back(static_cast<int>(i));
  }
  return out;
}

double infeasibility(const FeasibleSet& set, const Vector& z) {
  check_dimension("z", set.dimension(), z.size());
  if (!z.allFinite()) return kInf;
  return std::visit(
      Overloaded{
          [](const WholeSpace&) { return 0.0; },
          [&](const NonnegativeOrthant& s) { return box_infeasibility(orthant_bounds(s.n), z); },
          [&](const Box& s) { return box_infeasibility({s.lower, s.upper}, z); },
          [&](const Ball& s) {
            return std::max(0.0, ((z - s.center).norm() - s.radius) / (1.0 + s.radius));
          },
          [&](const HalfspaceIntersection& s) {
            double worst = 0.0;
            for (const auto& row : s.rows)
              worst = std::max(worst, (row.offset - row.normal.dot(z)) / (1.0 + std::abs(row.offset)));
            return worst;
          },
      },
      set.variant());
}

bool is_feasible(const FeasibleSet& set, const Vector& z, double tol) {
  return infeasibility(set, z) <= tol;
}

void require_feasible(const FeasibleSet& set, const Vector& z, const std::string& what) {
  double v = infeasibility(set, z);
  if (v > kFeasibilityTolerance) throw InfeasiblePointError(what + " is not feasible", v);
}

Vector project(const FeasibleSet& set, const Vector& p) {
  check_dimension("p", set.dimension(), p.size());
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) { return Vector(p); },
          [&](const NonnegativeOrthant&) { return Vector(p.cwiseMax(0.0)); },
          [&](const Box& s) { return Vector(p.cwiseMax(s.lower).cwiseMin(s.upper)); },
          [&](const Ball& s) {
            Vector d = p - s.center;
            double norm = d.norm();
            if (norm <= s.radius) return Vector(p);
            return Vector(s.center + d * (s.radius / norm));
          },
          [&](const HalfspaceIntersection& s) { return project_polyhedron(s.rows, p).point; },
      },
      set.variant());
}

Vector project_tangent_cone(const FeasibleSet& set, const Vector& z, const Vector& v) {
  check_dimension("v", set.dimension(), v.size());
  require_feasible(set, z, "tangent cone base point");
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) { return Vector(v); },
          [&](const NonnegativeOrthant& s) { return tangent_box(orthant_bounds(s.n), z, v); },
          [&](const Box& s) { return tangent_box({s.lower, s.upper}, z, v); },
          [&](const Ball& s) {
            Vector inward = s.center - z;
            if (!near_bound(inward.norm(), s.radius)) return Vector(v);
            double along = inward.dot(v);
            if (along >= 0) return Vector(v);
            return Vector(v - inward * (along / inward.squaredNorm()));
          },
          [&](const HalfspaceIntersection& s) {
            std::vector<Halfspace> cone;
            for (int i : cone_activity(s, z).active_rows) cone.push_back({s.rows[i].normal, 0.0});
            return project_polyhedron(cone, v).point;
          },
      },
      set.variant());
}

Vector project_normal_cone(const FeasibleSet& set, const Vector& z, const Vector& v) {
  return v - project_tangent_cone(set, z, v);
}

LinearMinResult linear_min_over_set_ball(const FeasibleSet& set, const Vector& center,
                                         double radius, const Vector& cost) {
  check_dimension("center", set.dimension(), center.size());
  check_dimension("cost", set.dimension(), cost.size());
  if (!(radius >= 0)) throw InvalidArgumentError("gap radius must be nonnegative");
  require_feasible(set, center, "gap center");
  if (cost.squaredNorm() == 0.0 || radius == 0.0) return {center, cost.dot(center)};
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) -> LinearMinResult {
            Vector z = center - cost * (radius / cost.norm());
            return {z, cost.dot(z)};
          },
          [&](const NonnegativeOrthant& s) {
            return linear_min_box(orthant_bounds(s.n), center, radius, cost);
          },
          [&](const Box& s) { return linear_min_box({s.lower, s.upper}, center, radius, cost); },
          [&](const Ball&) -> LinearMinResult {
            throw UnsupportedSetError("linear minimization over ball sets is not supported");
          },
          [&](const HalfspaceIntersection&) -> LinearMinResult {
            throw UnsupportedSetError(
                "linear minimization over halfspace intersections is not supported");
          },
      },
      set.variant());
}

}  // namespace egvi
