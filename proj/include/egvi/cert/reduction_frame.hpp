#pragma once

#include <array>

#include "egvi/linalg.hpp"

namespace egvi::cert {

inline constexpr double kFrameConditionLimit = 1e8;
inline constexpr double kFrameTolerance = 1e-8;

// One EG step rewritten in a rotated, translated basis where the three
// active normals take the form (1,0,0,..), (alpha,1,0,..), (beta1,beta2,1,..).
// Index 0 is step k, 1 the half step, 2 step k+1.
struct ReductionFrame {
  std::array<Vector, 3> normals;  // scaled, in the rotated basis
  Matrix rotation;                 // orthonormal, rows are the new basis
  Vector translation;              // vertex of the cone in original coordinates
  double alpha = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::array<Vector, 3> points;     // rotation * (z - translation)
  std::array<Vector, 3> operators;  // rotation * F
};

// `normal_k` is a normal of the constraint active at z_k. The other two
// normals are z_half - z_k + eta F_k and z_next - z_k + eta F_half.
// Throws DegenerateFrameError when the three normals are (nearly) dependent
// and PropertyViolationError naming the first inequality that fails.
ReductionFrame reduction_frame(const Vector& z_k, const Vector& z_half, const Vector& z_next, const Vector& f_k,
                               const Vector& f_half, const Vector& f_next, double eta, const Vector& normal_k,
                               double lipschitz);

}  // namespace egvi::cert
