#include "egvi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "egvi/errors.hpp"

namespace egvi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Face { kFree, kLower, kUpper, kFixed };

// Per-coordinate activity for the box-like variants.
std::optional<std::vector<Face>> box_faces(const FeasibleSet& set, const Vector& z) {
  Vector lower, upper;
  if (const auto* s = set.get_if<Box>()) {
    lower = s->lower;
    upper = s->upper;
  } else if (const auto* s = set.get_if<NonnegativeOrthant>()) {
    lower = Vector::Zero(s->n);
    upper = Vector::Constant(s->n, kInf);
  } else if (const auto* s = set.get_if<WholeSpace>()) {
    return std::vector<Face>(s->n, Face::kFree);
  } else {
    return std::nullopt;
  }
  auto active = [](double value, double bound) {
    return std::isfinite(bound) &&
           std::abs(value - bound) <= kActivityTolerance * (1.0 + std::abs(bound));
  };
  std::vector<Face> faces(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    bool lo = active(z[i], lower[i]), hi = active(z[i], upper[i]);
    faces[i] = lo && hi ? Face::kFixed : lo ? Face::kLower : hi ? Face::kUpper : Face::kFree;
  }
  return faces;
}

// Generators g_j of the normal cone, N = {sum lambda_j g_j, lambda >= 0}.
// Empty for the whole space and at interior points.
std::vector<Vector> normal_generators(const FeasibleSet& set, const Vector& z) {
  std::vector<Vector> gens;
  const Eigen::Index n = z.size();
  if (auto faces = box_faces(set, z)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector e = Vector::Unit(n, i);
      Face f = (*faces)[i];
      if (f == Face::kLower || f == Face::kFixed) gens.push_back(-e);
      if (f == Face::kUpper || f == Face::kFixed) gens.push_back(e);
    }
  } else if (const auto* s = set.get_if<Ball>()) {
    Vector outward = z - s->center;
    if (std::abs(outward.norm() - s->radius) <= kActivityTolerance * (1.0 + s->radius))
      gens.push_back(outward);
  } else if (const auto* s = set.get_if<HalfspaceIntersection>()) {
    for (int i : cone_activity(*s, z).active_rows) gens.push_back(-s->rows[i].normal);
  }
  return gens;
}

// Nonnegative least squares min ||target - sum lambda_j g_j|| by enumerating
// supports; returns the fitted combination.
Vector nnls_combination(const std::vector<Vector>& gens, const Vector& target) {
  const size_t m = gens.size();
  if (m > 16) throw UnsupportedSetError("too many normal-cone generators for enumeration");
  Vector best = Vector::Zero(target.size());
  double best_res = target.squaredNorm();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<size_t> support;
    for (size_t j = 0; j < m; ++j)
      if (mask & (1u << j)) support.push_back(j);
    Matrix g(target.size(), support.size());
    for (size_t c = 0; c < support.size(); ++c) g.col(c) = gens[support[c]];
    Vector lambda = g.completeOrthogonalDecomposition().solve(target);
    if ((lambda.array() < 0).any()) continue;
    Vector fit = g * lambda;
    double res = (target - fit).squaredNorm();
    if (res < best_res) {
      best_res = res;
      best = fit;
    }
  }
  return best;
}

// Pi_N(v) computed from the cone directly, independent of the tangent projection.
Vector normal_projection_direct(const FeasibleSet& set, const Vector& z, const Vector& v) {
  if (auto faces = box_faces(set, z)) {
    Vector out = Vector::Zero(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      switch ((*faces)[i]) {
        case Face::kFree: break;
        case Face::kLower: out[i] = std::min(v[i], 0.0); break;
        case Face::kUpper: out[i] = std::max(v[i], 0.0); break;
        case Face::kFixed: out[i] = v[i]; break;
      }
    }
    return out;
  }
  return nnls_combination(normal_generators(set, z), v);
}

// Pi_{z + T}(p) as a projection onto a translated set.
Vector project_translated_cone(const FeasibleSet& set, const Vector& z, const Vector& p) {
  if (auto faces = box_faces(set, z)) {
    Vector out = p;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      switch ((*faces)[i]) {
        case Face::kFree: break;
        case Face::kLower: out[i] = std::max(p[i], z[i]); break;
        case Face::kUpper: out[i] = std::min(p[i], z[i]); break;
        case Face::kFixed: out[i] = z[i]; break;
      }
    }
    return out;
  }
  std::vector<Halfspace> rows;
  for (const Vector& g : normal_generators(set, z)) rows.push_back({-g, -g.dot(z)});
  return project_polyhedron(rows, p).point;
}

}  // namespace

double TangentResidualRoutes::spread() const {
  double lo = kInf, hi = -kInf;
  for (const auto& v : values) {
    if (!v) continue;
    lo = std::min(lo, *v);
    hi = std::max(hi, *v);
  }
  return hi >= lo ? hi - lo : 0.0;
}

double natural_residual(const VIInstance& inst, const Vector& z) {
  Vector f = inst.eval(z);
  return (z - project(inst.set(), z - f)).norm();
}

double tangent_residual(const VIInstance& inst, const Vector& z) {
  Vector f = inst.eval(z);
  return project_tangent_cone(inst.set(), z, -f).norm();
}

TangentResidualRoutes tangent_residual_variants(const VIInstance& inst, const Vector& z) {
  require_feasible(inst.set(), z, "measure point");
  const Vector f = inst.eval(z);
  const Vector v = -f;
  TangentResidualRoutes out;

  if (box_faces(inst.set(), z)) {
    // The maximizing unit normal is Pi_N(-F) / ||Pi_N(-F)||.
    Vector p = normal_projection_direct(inst.set(), z, v);
    double pn = p.norm();
    if (pn == 0.0) {
      out.values[0] = f.norm();
      out.values[1] = f.norm();
    } else {
      Vector a = p / pn;
      // ||F||^2 - <F, a>^2 = sum_{i<j} (F_i a_j - F_j a_i)^2 for unit a, which
      // avoids cancellation when F is nearly normal.
      double s = 0.0;
      for (Eigen::Index i = 0; i < f.size(); ++i)
        for (Eigen::Index j = i + 1; j < f.size(); ++j) {
          double t = f[i] * a[j] - f[j] * a[i];
          s += t * t;
        }
      out.values[0] = std::sqrt(s);
      out.values[1] = (f - f.dot(a) * a).norm();
    }
  }
  out.values[2] = project_tangent_cone(inst.set(), z, v).norm();
  out.values[3] = (project_translated_cone(inst.set(), z, z - f) - z).norm();
  out.values[4] = (v - normal_projection_direct(inst.set(), z, v)).norm();
  if (auto faces = box_faces(inst.set(), z)) {
    // Coordinatewise: cancel F_i whenever the sign of the normal allows it.
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      Face face = (*faces)[i];
      bool cancel = face == Face::kFixed || (face == Face::kLower && f[i] >= 0) ||
                    (face == Face::kUpper && f[i] <= 0);
      if (!cancel) s += f[i] * f[i];
    }
    out.values[5] = std::sqrt(s);
  } else {
    // min ||F + a|| over a in N equals the distance from -F to N.
    Vector a = nnls_combination(normal_generators(inst.set(), z), v);
    out.values[5] = (f + a).norm();
  }
  return out;
}

double tangent_residual_orthant_closed_form(const Vector& f_z, const Vector& z) {
  if (f_z.size() != z.size()) throw DimensionError("F_z", z.size(), f_z.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] < -1e-12) throw InfeasiblePointError("orthant point has a negative coordinate", -z[i]);
    if (z[i] > 1e-12 || f_z[i] < 0) s += f_z[i] * f_z[i];
  }
  return std::sqrt(s);
}

double gap(const VIInstance& inst, const Vector& z, double radius) {
  Vector f = inst.eval(z);
  LinearMinResult lm = linear_min_over_set_ball(inst.set(), z, radius, f);
  return std::max(0.0, f.dot(z - lm.minimizer));
}

double duality_gap_bilinear(const BilinearGameSpec& spec, const Vector& z) {
  const Eigen::Index rows = spec.A.rows(), cols = spec.A.cols();
  if (z.size() != rows + cols) throw DimensionError("z", rows + cols, z.size());
  Vector x = z.head(rows), y = z.tail(cols);

  // Best linear response over a box: bound chosen by the sign of the cost.
  auto box_max = [](const Vector& cost, const Vector& lo, const Vector& hi) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < cost.size(); ++i) {
      if (cost[i] > 0) total += cost[i] * hi[i];
      if (cost[i] < 0) total += cost[i] * lo[i];
    }
    return total;
  };
  double max_y = box_max(spec.A.transpose() * x - spec.c, spec.y_lower, spec.y_upper) -
                 spec.b.dot(x);
  double min_x = -box_max(-(spec.A * y - spec.b), spec.x_lower, spec.x_upper) - spec.c.dot(y);
  return max_y - min_x;
}

MeasureReport measure_report(const VIInstance& inst, const Vector& z,
                             std::optional<double> radius) {
  MeasureReport r;
  r.natural_residual = natural_residual(inst, z);
  r.tangent_residual = tangent_residual(inst, z);
  if (radius) {
    try {
      r.gap = gap(inst, z, *radius);
    } catch (const UnsupportedSetError&) {
    }
  }
  return r;
}

}  // namespace egvi
