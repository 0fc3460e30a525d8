#pragma once

#include <cstdint>
#include <optional>

#include "egvi/linalg.hpp"
#include "egvi/sets.hpp"

namespace egvi {

struct OperatorConstants {
  double lipschitz = 0.0;  // sigma_max(M)
  double gamma = 0.0;      // lambda_min of the symmetric part of M
};

inline constexpr int kPowerIterationCap = 10000;
inline constexpr double kPowerIterationTolerance = 1e-10;

// Power iteration with a fixed start vector; throws NonConvergenceError.
OperatorConstants estimate_constants(const Matrix& m);
// Largest singular value of a (possibly rectangular) matrix, by power iteration.
double spectral_norm(const Matrix& a);

// F(z) = M z + q.
class AffineOperator {
 public:
  AffineOperator(Matrix m, Vector q);
  AffineOperator(Matrix m, Vector q, OperatorConstants constants);

  int dimension() const { return static_cast<int>(q_.size()); }
  const Matrix& matrix() const { return m_; }
  const Vector& offset() const { return q_; }
  double lipschitz() const { return constants_.lipschitz; }
  double gamma() const { return constants_.gamma; }
  const OperatorConstants& constants() const { return constants_; }

  Vector operator()(const Vector& z) const;

 private:
  Matrix m_;
  Vector q_;
  OperatorConstants constants_;
};

Vector eval_operator(const AffineOperator& op, const Vector& z);
OperatorConstants estimate_constants(const AffineOperator& op);

// True iff <F(z) - F(z'), z - z'> >= -1e-10 on every sampled pair.
bool check_monotone_samples(const AffineOperator& op, int samples, std::uint64_t seed);

// Saddle problem min_x max_y x^T A y - b^T x - c^T y over a product box.
struct BilinearGameSpec {
  Matrix A;
  Vector b;
  Vector c;
  Vector x_lower, x_upper;
  Vector y_lower, y_upper;
};

// Uniform box [lo, hi] for both players.
BilinearGameSpec bilinear_spec(Matrix A, Vector b, Vector c, double lo, double hi);

class VIInstance {
 public:
  VIInstance(AffineOperator op, FeasibleSet set);

  const AffineOperator& op() const { return op_; }
  const FeasibleSet& set() const { return set_; }
  int dimension() const { return op_.dimension(); }
  Vector eval(const Vector& z) const { return op_(z); }
  // Present for instances built by make_bilinear.
  const std::optional<BilinearGameSpec>& bilinear() const { return bilinear_; }

 private:
  friend VIInstance make_bilinear(const BilinearGameSpec& spec);
  AffineOperator op_;
  FeasibleSet set_;
  std::optional<BilinearGameSpec> bilinear_;
};

VIInstance make_bilinear(const BilinearGameSpec& spec);

}  // namespace egvi
