#pragma once

/* Uniquely geodesic model spaces used throughout the library:
 *
 *   - Euclidean R^d with the usual norm distance,
 *   - the unit sphere S^{d-1} with the geodesic metric
 *         d(x,y) = arccos(<x,y>),
 *   - the manifold S++(d) of symmetric positive definite matrices with the
 *     affine invariant metric
 *         d(A,B) = || log(A^{-1/2} B A^{-1/2}) ||_F.
 *
 * Points are plain immutable data; every operation is a pure function.
 * Geodesics are parameterized by arc-length fraction t in [0,1], written
 * z = (1-t)x (+) ty, with d(x,z) = t d(x,y).
 *
 * Antipodal sphere pairs (d > pi - 1e-8) are rejected wherever a geodesic is
 * needed: the connecting geodesic is not unique there.  SPD matrices with an
 * eigenvalue <= 1e-12 are rejected rather than clamped, since the matrix
 * logarithm diverges at zero.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "geoprox/errors.hpp"

namespace geoprox {

enum class SpaceKind { Euclidean, Sphere, Spd };

// A point of one of the model spaces.  `data` holds the d coordinates of a
// vector, or the full d x d matrix row-major for SPD.
struct Point {
    SpaceKind kind = SpaceKind::Euclidean;
    int dim = 0;
    std::vector<double> data;

    friend bool operator==(const Point&, const Point&) = default;
};

Point euclidean_point(std::vector<double> coords);
Point sphere_point(std::vector<double> coords);
Point spd_point(int dim, std::vector<double> row_major);

// Identity matrix point of S++(d).
Point spd_identity(int dim);

// Uniform convexity parameters of the space.  Euclidean space and the SPD
// manifold carry p = c = 2.  A sphere cap of radius delta is 2-uniformly
// convex with the constant c = cap_convexity_constant(kappa, delta); the
// full sphere keeps the default c = 2, which downstream checks treat as a
// recorded quantity only.
struct SpaceParams {
    SpaceKind kind = SpaceKind::Euclidean;
    double p = 2.0;
    double c = 2.0;
    std::optional<double> kappa; // curvature upper bound
    std::optional<double> delta; // cap radius (radians)

    static SpaceParams euclidean(double p = 2.0);
    static SpaceParams sphere(double p = 2.0);
    static SpaceParams sphere_cap(double delta, double kappa = 1.0, double p = 2.0);
    static SpaceParams spd(double p = 2.0);
};

void validate(const SpaceParams& space);

// Full point validation: kind, dimensions, unit norm on the sphere,
// symmetry and positive definiteness for SPD (runs an eigendecomposition).
void validate_point(const SpaceParams& space, const Point& x);

struct GeodesicSegment {
    Point start;
    Point end;
    double length = 0.0; // d(start, end)
};

// Builds a segment, rejecting sphere pairs without a unique geodesic.
GeodesicSegment make_segment(const SpaceParams& space, Point start, Point end);

double distance(const SpaceParams& space, const Point& x, const Point& y);

// The point z = (1-t)x (+) ty at fraction t of the geodesic from x to y.
// t = 0 and t = 1 return x and y exactly.
Point geodesic(const SpaceParams& space, const Point& x, const Point& y, double t);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// `vectors` is n x n row-major with column k the unit eigenvector belonging
// to values[k]; eigenvalues are sorted descending and satisfy
// m = V diag(values) V^T.
struct SymmetricEig {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
};

SymmetricEig spd_symmetric_eig(int n, std::span<const double> m);

// Seeded sampling.  Euclidean: i.i.d. standard normal coordinates.
// Sphere: normalized standard normal vector.  SPD: A = L L^T with L lower
// triangular, off-diagonal entries standard normal and diagonal entries
// |standard normal| + 0.1.
Point random_point(const SpaceParams& space, int dim, std::uint64_t seed);
Point random_point(const SpaceParams& space, int dim, std::mt19937_64& rng);

// Sphere only: rejection sampling restricted to the closed cap of the given
// radius around `pole`.
Point random_point_in_cap(const SpaceParams& space, const Point& pole,
                          double cap_radius, std::mt19937_64& rng);

// Maximum pairwise distance; zero for a single point.
double set_diameter(const SpaceParams& space, std::span<const Point> points);

} // namespace geoprox
