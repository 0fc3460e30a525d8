#include "support.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "egvi/errors.hpp"

namespace egvi::testing {

namespace {

// Power iteration occasionally stalls on clustered eigenvalues; redraw those.
template <typename MakeMatrix>
AffineOperator draw_operator(Rng& rng, int n, MakeMatrix make) {
  for (;;) {
    Matrix m = make();
    Vector q = random_vector(rng, n, 2.0);
    try {
      return AffineOperator(m, q);
    } catch (const NonConvergenceError&) {
    }
  }
}

}  // namespace

Vector random_vector(Rng& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

Matrix random_matrix(Rng& rng, int rows, int cols, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

Matrix random_skew(Rng& rng, int n, double scale) {
  Matrix c = random_matrix(rng, n, n, scale);
  return c - c.transpose();
}

FeasibleSet random_box(Rng& rng, int n) {
  std::uniform_real_distribution<double> width(0.2, 2.0);
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo(i) = -width(rng);
    hi(i) = width(rng);
  }
  return FeasibleSet::box(lo, hi);
}

VIInstance random_monotone_box(Rng& rng, int n) {
  std::uniform_int_distribution<int> rank(0, n);
  AffineOperator op = draw_operator(rng, n, [&] {
    Matrix b = random_matrix(rng, rank(rng), n, 0.7);
    return Matrix(random_skew(rng, n, 0.7) + b.transpose() * b);
  });
  return VIInstance(op, random_box(rng, n));
}

VIInstance random_monotone_orthant(Rng& rng, int n) {
  AffineOperator op = draw_operator(rng, n, [&] {
    Matrix b = random_matrix(rng, n, n, 0.7);
    return Matrix(random_skew(rng, n, 0.7) + b.transpose() * b);
  });
  return VIInstance(op, FeasibleSet::orthant(n));
}

VIInstance random_monotone_instance(Rng& rng, int index, int max_dim) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  int n = dim(rng);
  return index % 2 == 0 ? random_monotone_box(rng, n) : random_monotone_orthant(rng, n);
}

double step_size(const VIInstance& inst, double fraction) {
  double l = inst.op().lipschitz();
  return l > 0.0 ? fraction / l : fraction;
}

VIInstance random_strongly_monotone(Rng& rng, int n, double gamma, bool orthant) {
  AffineOperator op = draw_operator(
      rng, n, [&] { return Matrix(gamma * Matrix::Identity(n, n) + random_skew(rng, n, 0.7)); });
  FeasibleSet set = orthant ? FeasibleSet::orthant(n) : random_box(rng, n);
  return VIInstance(op, set);
}

Vector random_feasible_point(Rng& rng, const FeasibleSet& set, double snap_probability) {
  const int n = set.dimension();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  Vector z(n);
  if (const auto* box = set.get_if<Box>()) {
    for (int i = 0; i < n; ++i) {
      double lo = box->lower(i), hi = box->upper(i);
      double r = u(rng);
      if (r < snap_probability / 2 && std::isfinite(lo))
        z(i) = lo;
      else if (r < snap_probability && std::isfinite(hi))
        z(i) = hi;
      else if (std::isfinite(lo) && std::isfinite(hi))
        z(i) = lo + (hi - lo) * u(rng);
      else if (std::isfinite(lo))
        z(i) = lo + e(rng);
      else if (std::isfinite(hi))
        z(i) = hi - e(rng);
      else
        z(i) = 2.0 * u(rng) - 1.0;
    }
    return z;
  }
  if (set.get_if<NonnegativeOrthant>()) {
    for (int i = 0; i < n; ++i) z(i) = u(rng) < snap_probability ? 0.0 : e(rng);
    return z;
  }
  return project(set, random_vector(rng, n, 2.0));
}

Vector brute_force_polyhedron_projection(const std::vector<Halfspace>& rows, const Vector& p) {
  const int m = static_cast<int>(rows.size());
  const Eigen::Index n = p.size();
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    Vector z = p;
    if (!idx.empty()) {
      Matrix a(static_cast<Eigen::Index>(idx.size()), n);
      Vector b(static_cast<Eigen::Index>(idx.size()));
      for (size_t r = 0; r < idx.size(); ++r) {
        a.row(static_cast<Eigen::Index>(r)) = rows[static_cast<size_t>(idx[r])].normal.transpose();
        b(static_cast<Eigen::Index>(r)) = rows[static_cast<size_t>(idx[r])].offset;
      }
      Matrix gram = a * a.transpose();
      Eigen::JacobiSVD<Matrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vector mult = svd.solve(a * p - b);
      z = p - a.transpose() * mult;
      if ((a * z - b).norm() > 1e-9) continue;  // inconsistent equalities
    }
    bool feasible = true;
    for (const auto& row : rows)
      if (row.normal.dot(z) < row.offset - 1e-10 * (1.0 + std::abs(row.offset))) feasible = false;
    if (!feasible) continue;
    double d = (z - p).norm();
    if (d < best_dist - 1e-14) {
      best_dist = d;
      best = z;
    }
  }
  return best;
}

Vector project_box_ball(const Vector& lower, const Vector& upper, const Vector& center, double radius,
                        const Vector& y) {
  auto at = [&](double mu) { return ((y + mu * center) / (1.0 + mu)).cwiseMax(lower).cwiseMin(upper).eval(); };
  Vector z = at(0.0);
  if ((z - center).norm() <= radius) return z;
  double lo = 0.0, hi = 1.0;
  while ((at(hi) - center).norm() > radius) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((at(mid) - center).norm() > radius)
      lo = mid;
    else
      hi = mid;
  }
  return at(hi);
}

double projected_gradient_linear_min(const Vector& lower, const Vector& upper, const Vector& center,
                                     double radius, const Vector& cost, double step, long iterations) {
  Vector z = center;
  for (long it = 0; it < iterations; ++it) {
    Vector next = project_box_ball(lower, upper, center, radius, z - step * cost);
    if ((next - z).norm() < 1e-16) break;
    z = next;
  }
  return cost.dot(z);
}

Vector naive_eg(const Matrix& m, const Vector& q, const Vector& lower, const Vector& upper, double eta,
                const Vector& z0, long steps) {
  Vector z = z0;
  for (long k = 0; k < steps; ++k) {
    Vector half = (z - eta * (m * z + q)).cwiseMax(lower).cwiseMin(upper);
    z = (z - eta * (m * half + q)).cwiseMax(lower).cwiseMin(upper);
  }
  return z;
}

}  // namespace egvi::testing
