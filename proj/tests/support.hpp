#pragma once

#include <random>
#include <vector>

#include "egvi/instances.hpp"
#include "egvi/sets.hpp"

namespace egvi::testing {

using Rng = std::mt19937_64;

Vector random_vector(Rng& rng, int n, double scale = 1.0);
Matrix random_matrix(Rng& rng, int rows, int cols, double scale = 1.0);
Matrix random_skew(Rng& rng, int n, double scale = 1.0);

// Box around the origin with random widths on both sides.
FeasibleSet random_box(Rng& rng, int n);

// M = skew + B^T B with B of random rank (possibly zero), on a random box.
VIInstance random_monotone_box(Rng& rng, int n);
// M = skew + B^T B with B square (full rank almost surely), on the orthant.
VIInstance random_monotone_orthant(Rng& rng, int n);
// Alternates between the two families above.
VIInstance random_monotone_instance(Rng& rng, int index, int max_dim = 8);
// M = gamma I + skew on a box or the orthant.
// fraction / L, or fraction itself for the zero operator.
double step_size(const VIInstance& inst, double fraction);

VIInstance random_strongly_monotone(Rng& rng, int n, double gamma, bool orthant);

// Random feasible point; some coordinates land exactly on a bound.
Vector random_feasible_point(Rng& rng, const FeasibleSet& set, double snap_probability = 0.3);

// Projection onto a polyhedron by trying every subset of rows as the active
// set; an independent pseudo-inverse solve per subset.
Vector brute_force_polyhedron_projection(const std::vector<Halfspace>& rows, const Vector& p);

// Exact projection onto box intersected with a ball, by bisection on the ball
// multiplier.
Vector project_box_ball(const Vector& lower, const Vector& upper, const Vector& center, double radius,
                        const Vector& y);

// Projected gradient on <cost, z> over box intersected with the ball.
double projected_gradient_linear_min(const Vector& lower, const Vector& upper, const Vector& center,
                                     double radius, const Vector& cost, double step = 1e-3,
                                     long iterations = 1'000'000);

// Plain EG loop written against Eigen directly, for cross-checking.
Vector naive_eg(const Matrix& m, const Vector& q, const Vector& lower, const Vector& upper, double eta,
                const Vector& z0, long steps);

}  // namespace egvi::testing
