#include "egvi/cert/reduction_frame.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <vector>

#include "egvi/errors.hpp"

namespace egvi::cert {

namespace {

// Rows form an orthonormal basis whose first three vectors span the inputs
// in order, each with a positive pivot.
Matrix gram_schmidt(const std::array<Vector, 3>& ordered) {
  const Eigen::Index n = ordered[0].size();
  std::vector<Vector> basis;
  auto add = [&](Vector v) {
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : basis) v -= b.dot(v) * b;  // second pass for stability
    double norm = v.norm();
    if (norm <= 1e-10) return false;
    basis.push_back(v / norm);
    return true;
  };
  for (const auto& a : ordered)
    if (!add(a)) throw DegenerateFrameError("normals are linearly dependent");
  for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(basis.size()) < n; ++i)
    add(Vector::Unit(n, i));
  Matrix q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) q.row(i) = basis[static_cast<size_t>(i)].transpose();
  return q;
}

void require(const char* property, double slack) {
  if (slack < 0.0) throw PropertyViolationError(property, slack);
}

}  // namespace

ReductionFrame reduction_frame(const Vector& z_k, const Vector& z_half, const Vector& z_next, const Vector& f_k,
                               const Vector& f_half, const Vector& f_next, double eta, const Vector& normal_k,
                               double lipschitz) {
  const Eigen::Index n = z_k.size();
  for (const Vector* v : {&z_half, &z_next, &f_k, &f_half, &f_next, &normal_k})
    if (v->size() != n) throw DimensionError("reduction frame input", n, v->size());
  if (n < 3) throw DegenerateFrameError("need at least three dimensions, got " + std::to_string(n));
  if (!(eta > 0.0)) throw InvalidArgumentError("eta must be positive");

  const Vector a_half = z_half - z_k + eta * f_k;
  const Vector a_next = z_next - z_k + eta * f_half;
  const std::array<Vector, 3> points = {z_k, z_half, z_next};

  Matrix a(3, n);
  a << a_next.transpose(), a_half.transpose(), normal_k.transpose();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > kFrameConditionLimit)
    throw DegenerateFrameError("normals are nearly dependent (condition " +
                               std::to_string(sv(2) > 0.0 ? sv(0) / sv(2) : INFINITY) + ")");

  ReductionFrame frame;
  frame.rotation = gram_schmidt({a_next, a_half, normal_k});

  // Cone vertex: minimum-norm point on all three active hyperplanes.
  Vector offsets(3);
  offsets << a_next.dot(z_next), a_half.dot(z_half), normal_k.dot(z_k);
  frame.translation = svd.solve(offsets);
  if ((a * frame.translation - offsets).norm() > kFrameTolerance * (1.0 + offsets.norm()))
    throw DegenerateFrameError("active hyperplanes have no common point");

  const Vector r_next = frame.rotation * a_next, r_half = frame.rotation * a_half, r_k = frame.rotation * normal_k;
  frame.normals[2] = r_next / r_next(0);
  frame.normals[1] = r_half / r_half(1);
  frame.normals[0] = r_k / r_k(2);
  frame.alpha = frame.normals[1](0);
  frame.beta1 = frame.normals[0](0);
  frame.beta2 = frame.normals[0](1);
  for (int i = 0; i < 3; ++i) {
    frame.points[i] = frame.rotation * (points[i] - frame.translation);
    frame.operators[i] = frame.rotation * std::array<Vector, 3>{f_k, f_half, f_next}[i];
  }

  // Membership and activity in the reduced cone.
  const double scale = 1.0 + frame.points[0].norm() + frame.points[1].norm() + frame.points[2].norm();
  const double tol = kFrameTolerance * scale;
  static const char* kMembership[3] = {"membership of step k", "membership of the half step",
                                       "membership of step k+1"};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) require(kMembership[j], frame.normals[i].dot(frame.points[j]) + tol);
    require("activity", tol - std::abs(frame.normals[i].dot(frame.points[i])));
  }

  // Co-direction of the reduced steps with their normals.
  auto codirected = [&](const char* name, const Vector& step, const Vector& normal) {
    const Vector unit = normal.normalized();
    const double along = step.dot(unit);
    require(name, along);
    require(name, kFrameTolerance * (1.0 + step.norm()) - (step - along * unit).norm());
  };
  const auto& zb = frame.points;
  const auto& fb = frame.operators;
  codirected("co-direction of the half step", zb[1] - zb[0] + eta * fb[0], frame.normals[1]);
  codirected("co-direction of step k+1", zb[2] - zb[0] + eta * fb[1], frame.normals[2]);

  const double op_scale = 1.0 + fb[0].squaredNorm() + fb[1].squaredNorm() + fb[2].squaredNorm() +
                          lipschitz * lipschitz * (zb[2] - zb[1]).squaredNorm();
  require("reduced Lipschitz",
          lipschitz * lipschitz * (zb[2] - zb[1]).squaredNorm() - (fb[2] - fb[1]).squaredNorm() +
              kFrameTolerance * op_scale);
  require("reduced monotone", (fb[2] - fb[0]).dot(zb[2] - zb[0]) + kFrameTolerance * op_scale);
  require("reduced gradient plane", frame.normals[0].dot(fb[0]) + kFrameTolerance * (1.0 + fb[0].norm()));
  return frame;
}

}  // namespace egvi::cert
