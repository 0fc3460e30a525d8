#pragma once

#include <array>
#include <optional>

#include "egvi/instances.hpp"

namespace egvi {

// ||z - Pi(z - F(z))||.
double natural_residual(const VIInstance& inst, const Vector& z);

// ||Pi_T(z)(-F(z))||; equals ||F(z)|| at interior points.
double tangent_residual(const VIInstance& inst, const Vector& z);

// The six equivalent formulations of the tangent residual:
//   0: sqrt(||F||^2 - max <F, a>^2) over unit normals a with <F, a> <= 0
//   1: min ||F - <F, a> a|| over the same unit normals
//   2: ||Pi_T(-F)||
//   3: ||Pi_{z + T}(z - F) - z||
//   4: ||-F - Pi_N(-F)||
//   5: min over a in N of ||F + a||
// Routes 0 and 1 need the maximizing unit normal in closed form and are only
// filled for whole space, orthant and box.
struct TangentResidualRoutes {
  std::array<std::optional<double>, 6> values;

  double spread() const;
};

TangentResidualRoutes tangent_residual_variants(const VIInstance& inst, const Vector& z);

// sqrt of the sum of F_i^2 over {i : z_i > 1e-12 or F_i < 0}.
double tangent_residual_orthant_closed_form(const Vector& f_z, const Vector& z);

// max of <F(z), z - z'> over z' in Z with ||z' - z|| <= radius.
double gap(const VIInstance& inst, const Vector& z, double radius);

// max_{y'} f(x, y') - min_{x'} f(x', y) for f(x, y) = x^T A y - b^T x - c^T y.
double duality_gap_bilinear(const BilinearGameSpec& spec, const Vector& z);

struct MeasureReport {
  double natural_residual = 0.0;
  double tangent_residual = 0.0;
  std::optional<double> gap;
  std::optional<double> step_half_dist;
  std::optional<double> step_full_dist;
};

// Gap is filled when a radius is given and the set supports it.
MeasureReport measure_report(const VIInstance& inst, const Vector& z,
                             std::optional<double> radius = std::nullopt);

}  // namespace egvi
