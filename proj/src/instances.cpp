#include "egvi/instances.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "egvi/errors.hpp"

namespace egvi {

namespace {

Vector start_vector(Eigen::Index n) {
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (auto& x : v) x = normal(rng);
  return v.normalized();
}

// Largest eigenvalue of a symmetric positive semidefinite matrix.
double dominant_eigenvalue(const Matrix& s, const char* what) {
  const Eigen::Index n = s.rows();
  Vector v = start_vector(n);
  double lambda = v.dot(s * v);
  for (int it = 1; it <= kPowerIterationCap; ++it) {
    Vector w = s * v;
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    double next = v.dot(s * v);
    double change = std::abs(next - lambda);
    lambda = next;
    if (change <= kPowerIterationTolerance * std::max(1.0, std::abs(lambda))) return lambda;
  }
  throw NonConvergenceError(std::string("power iteration for ") + what + " did not converge",
                            (s * v - lambda * v).norm(), kPowerIterationCap);
}

}  // namespace

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, dominant_eigenvalue(a.transpose() * a, "sigma_max")));
}

OperatorConstants estimate_constants(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("M.cols", m.rows(), m.cols());
  OperatorConstants out;
  if (m.size() == 0) return out;
  out.lipschitz = spectral_norm(m);

  Matrix sym = 0.5 * (m + m.transpose());
  // With rho the spectral radius of sym, rho*I - sym is positive semidefinite
  // and its dominant eigenvalue is rho - lambda_min(sym).
  double rho = spectral_norm(sym);
  if (rho == 0.0) return out;
  Matrix shifted = rho * Matrix::Identity(m.rows(), m.cols()) - sym;
  out.gamma = rho - dominant_eigenvalue(shifted, "gamma");
  return out;
}

AffineOperator::AffineOperator(Matrix m, Vector q) : m_(std::move(m)), q_(std::move(q)) {
  if (m_.rows() != m_.cols()) throw DimensionError("M.cols", m_.rows(), m_.cols());
  if (m_.rows() != q_.size()) throw DimensionError("q", m_.rows(), q_.size());
  constants_ = estimate_constants(m_);
}

AffineOperator::AffineOperator(Matrix m, Vector q, OperatorConstants constants)
    : m_(std::move(m)), q_(std::move(q)), constants_(constants) {
  if (m_.rows() != m_.cols()) throw DimensionError("M.cols", m_.rows(), m_.cols());
  if (m_.rows() != q_.size()) throw DimensionError("q", m_.rows(), q_.size());
}

Vector AffineOperator::operator()(const Vector& z) const {
  if (z.size() != q_.size()) throw DimensionError("z", q_.size(), z.size());
  return m_ * z + q_;
}

Vector eval_operator(const AffineOperator& op, const Vector& z) { return op(z); }

OperatorConstants estimate_constants(const AffineOperator& op) {
  return estimate_constants(op.matrix());
}

bool check_monotone_samples(const AffineOperator& op, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgumentError("samples must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int n = op.dimension();
  for (int s = 0; s < samples; ++s) {
    Vector z(n), w(n);
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    for (int i = 0; i < n; ++i) w[i] = normal(rng);
    if ((op(z) - op(w)).dot(z - w) < -1e-10) return false;
  }
  return true;
}

BilinearGameSpec bilinear_spec(Matrix A, Vector b, Vector c, double lo, double hi) {
  BilinearGameSpec spec;
  spec.x_lower = Vector::Constant(A.rows(), lo);
  spec.x_upper = Vector::Constant(A.rows(), hi);
  spec.y_lower = Vector::Constant(A.cols(), lo);
  spec.y_upper = Vector::Constant(A.cols(), hi);
  spec.A = std::move(A);
  spec.b = std::move(b);
  spec.c = std::move(c);
  return spec;
}

VIInstance::VIInstance(AffineOperator op, FeasibleSet set)
    : op_(std::move(op)), set_(std::move(set)) {
  if (op_.dimension() != set_.dimension())
    throw DimensionError("set", op_.dimension(), set_.dimension());
}

VIInstance make_bilinear(const BilinearGameSpec& spec) {
  const Eigen::Index rows = spec.A.rows(), cols = spec.A.cols();
  if (spec.b.size() != rows) throw DimensionError("b", rows, spec.b.size());
  if (spec.c.size() != cols) throw DimensionError("c", cols, spec.c.size());
  if (spec.x_lower.size() != rows) throw DimensionError("x_box.l", rows, spec.x_lower.size());
  if (spec.x_upper.size() != rows) throw DimensionError("x_box.u", rows, spec.x_upper.size());
  if (spec.y_lower.size() != cols) throw DimensionError("y_box.l", cols, spec.y_lower.size());
  if (spec.y_upper.size() != cols) throw DimensionError("y_box.u", cols, spec.y_upper.size());

  const Eigen::Index n = rows + cols;
  Matrix m = Matrix::Zero(n, n);
  m.topRightCorner(rows, cols) = spec.A;
  m.bottomLeftCorner(cols, rows) = -spec.A.transpose();
  Vector q(n);
  q << -spec.b, spec.c;

  // The symmetric part of a skew operator vanishes, so gamma is exactly 0.
  OperatorConstants constants{spectral_norm(spec.A), 0.0};
  Vector lower(n), upper(n);
  lower << spec.x_lower, spec.y_lower;
  upper << spec.x_upper, spec.y_upper;

  VIInstance inst(AffineOperator(std::move(m), std::move(q), constants),
                  FeasibleSet::box(std::move(lower), std::move(upper)));
  inst.bilinear_ = spec;
  return inst;
}

}  // namespace egvi
