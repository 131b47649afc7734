#include "geoprox/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "geoprox/fourpoint.hpp"

namespace geoprox {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;
constexpr double kEigenFloor = 1e-12;     // smallest admissible SPD eigenvalue
constexpr double kAntipodalMargin = 1e-8; // reject sphere pairs with d > pi - margin

const char* kind_name(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Spd: return "spd";
    }
    return "?";
}

[[noreturn]] void fail_dim(const char* where) {
    throw InvalidArgument(std::string(where) + ": dimension mismatch");
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// ---- small dense matrices, row-major ---------------------------------

std::vector<double> mat_mul(int n, const std::vector<double>& a,
                            const std::vector<double>& b) {
    std::vector<double> c(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    return c;
}

void symmetrize(int n, std::vector<double>& a) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = s;
            a[j * n + i] = s;
        }
}

double frobenius(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

double max_asymmetry(int n, std::span<const double> a) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            worst = std::max(worst, std::abs(a[i * n + j] - a[j * n + i]));
    return worst;
}

// V f(lambda) V^T for the given eigensystem.
std::vector<double> assemble(const SymmetricEig& eig,
                             const std::vector<double>& fvals) {
    const int n = eig.n;
    std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors[i * n + k] * fvals[k] * eig.vectors[j * n + k];
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
    return out;
}

std::vector<double> eig_pow(const SymmetricEig& eig, double t, const char* where) {
    const int n = eig.n;
    std::vector<double> f(n);
    for (int k = 0; k < n; ++k) {
        if (eig.values[k] <= kEigenFloor)
            throw NumericalError(std::string(where) +
                                 ": matrix is not positive definite (eigenvalue " +
                                 std::to_string(eig.values[k]) + ")");
        f[k] = std::pow(eig.values[k], t);
    }
    return assemble(eig, f);
}

// ---- per-kind checks ---------------------------------------------------

void check_same_space(const SpaceParams& space, const Point& x, const Point& y,
                      const char* where) {
    if (x.kind != space.kind || y.kind != space.kind)
        throw InvalidArgument(std::string(where) + ": point kind does not match space (" +
                              kind_name(space.kind) + ")");
    if (x.dim != y.dim) fail_dim(where);
    const size_t want = space.kind == SpaceKind::Spd
                            ? static_cast<size_t>(x.dim) * x.dim
                            : static_cast<size_t>(x.dim);
    if (x.data.size() != want || y.data.size() != want) fail_dim(where);
}

void check_cheap(const SpaceParams& space, const Point& x, const char* where) {
    switch (space.kind) {
    case SpaceKind::Euclidean:
        break;
    case SpaceKind::Sphere: {
        const double n = norm2(x.data);
        if (std::abs(n - 1.0) > 1e-10)
            throw InvalidArgument(std::string(where) + ": sphere point is not unit norm (|x| = " +
                                  std::to_string(n) + ")");
        break;
    }
    case SpaceKind::Spd:
        if (max_asymmetry(x.dim, x.data) > kSymmetryTol)
            throw InvalidArgument(std::string(where) + ": SPD point is not symmetric");
        break;
    }
}

// ---- model space distances and geodesics ------------------------------

double euclidean_distance(const Point& x, const Point& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.data.size(); ++i) {
        const double d = x.data[i] - y.data[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// arccos(<x,y>) evaluated as 2 atan2(|x-y|, |x+y|), which stays accurate
// near both 0 and pi.
double sphere_distance(const Point& x, const Point& y) {
    double dm = 0.0, dp = 0.0;
    for (size_t i = 0; i < x.data.size(); ++i) {
        const double m = x.data[i] - y.data[i];
        const double p = x.data[i] + y.data[i];
        dm += m * m;
        dp += p * p;
    }
    return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

struct SpdWhitened {
    SymmetricEig root;            // eigensystem of A
    std::vector<double> m;        // A^{-1/2} B A^{-1/2}, symmetrized
};

SpdWhitened spd_whiten(const Point& a, const Point& b, const char* where) {
    const int n = a.dim;
    SpdWhitened w;
    w.root = spd_symmetric_eig(n, a.data);
    std::vector<double> inv_sqrt(n);
    for (int k = 0; k < n; ++k) {
        if (w.root.values[k] <= kEigenFloor)
            throw NumericalError(std::string(where) +
                                 ": SPD point is not positive definite");
        inv_sqrt[k] = 1.0 / std::sqrt(w.root.values[k]);
    }
    const std::vector<double> r_inv = assemble(w.root, inv_sqrt);
    std::vector<double> bm(b.data.begin(), b.data.end());
    w.m = mat_mul(n, mat_mul(n, r_inv, bm), r_inv);
    symmetrize(n, w.m);
    return w;
}

double spd_distance(const Point& a, const Point& b) {
    const SpdWhitened w = spd_whiten(a, b, "distance");
    const SymmetricEig me = spd_symmetric_eig(a.dim, w.m);
    double s = 0.0;
    for (double mu : me.values) {
        if (mu <= kEigenFloor)
            throw NumericalError("distance: SPD point is not positive definite");
        const double l = std::log(mu);
        s += l * l;
    }
    return std::sqrt(s);
}

Point sphere_geodesic(const Point& x, const Point& y, double t) {
    const double theta = sphere_distance(x, y);
    if (theta > std::numbers::pi - kAntipodalMargin)
        throw NumericalError("geodesic: sphere points are antipodal (d = " +
                             std::to_string(theta) + "), geodesic not unique");
    Point z = x;
    if (theta < 1e-9) {
        for (size_t i = 0; i < z.data.size(); ++i)
            z.data[i] = (1.0 - t) * x.data[i] + t * y.data[i];
    } else {
        const double s = std::sin(theta);
        const double a = std::sin((1.0 - t) * theta) / s;
        const double b = std::sin(t * theta) / s;
        for (size_t i = 0; i < z.data.size(); ++i)
            z.data[i] = a * x.data[i] + b * y.data[i];
    }
    // renormalize to keep drift from compounding over long runs
    const double n = norm2(z.data);
    if (n < 0.5) throw NumericalError("geodesic: degenerate sphere interpolation");
    for (double& v : z.data) v /= n;
    return z;
}

Point spd_geodesic(const Point& a, const Point& b, double t) {
    const int n = a.dim;
    const SpdWhitened w = spd_whiten(a, b, "geodesic");
    const SymmetricEig me = spd_symmetric_eig(n, w.m);
    const std::vector<double> mt = eig_pow(me, t, "geodesic");
    std::vector<double> sqrt_vals(n);
    for (int k = 0; k < n; ++k) sqrt_vals[k] = std::sqrt(w.root.values[k]);
    const std::vector<double> r = assemble(w.root, sqrt_vals);
    std::vector<double> g = mat_mul(n, mat_mul(n, r, mt), r);
    symmetrize(n, g);
    Point z = a;
    z.data = std::move(g);
    return z;
}

} // namespace

// ---- construction and validation ---------------------------------------

Point euclidean_point(std::vector<double> coords) {
    Point p;
    p.kind = SpaceKind::Euclidean;
    p.dim = static_cast<int>(coords.size());
    p.data = std::move(coords);
    return p;
}

Point sphere_point(std::vector<double> coords) {
    Point p;
    p.kind = SpaceKind::Sphere;
    p.dim = static_cast<int>(coords.size());
    p.data = std::move(coords);
    const double n = norm2(p.data);
    if (std::abs(n - 1.0) > kUnitNormTol)
        throw InvalidArgument("sphere_point: coordinates are not unit norm (|x| = " +
                              std::to_string(n) + ")");
    return p;
}

Point spd_point(int dim, std::vector<double> row_major) {
    if (dim <= 0 || row_major.size() != static_cast<size_t>(dim) * dim)
        throw InvalidArgument("spd_point: need dim*dim entries");
    Point p;
    p.kind = SpaceKind::Spd;
    p.dim = dim;
    p.data = std::move(row_major);
    if (max_asymmetry(dim, p.data) > kUnitNormTol)
        throw InvalidArgument("spd_point: matrix is not symmetric");
    const SymmetricEig eig = spd_symmetric_eig(dim, p.data);
    if (eig.values.back() <= kEigenFloor)
        throw InvalidArgument("spd_point: matrix is not positive definite (min eigenvalue " +
                              std::to_string(eig.values.back()) + ")");
    return p;
}

Point spd_identity(int dim) {
    std::vector<double> id(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) id[i * dim + i] = 1.0;
    Point p;
    p.kind = SpaceKind::Spd;
    p.dim = dim;
    p.data = std::move(id);
    return p;
}

SpaceParams SpaceParams::euclidean(double p) {
    return SpaceParams{SpaceKind::Euclidean, p, 2.0, std::nullopt, std::nullopt};
}

SpaceParams SpaceParams::sphere(double p) {
    return SpaceParams{SpaceKind::Sphere, p, 2.0, 1.0, std::nullopt};
}

SpaceParams SpaceParams::sphere_cap(double delta, double kappa, double p) {
    const double c = cap_convexity_constant(kappa, delta);
    return SpaceParams{SpaceKind::Sphere, p, c, kappa, delta};
}

SpaceParams SpaceParams::spd(double p) {
    return SpaceParams{SpaceKind::Spd, p, 2.0, std::nullopt, std::nullopt};
}

void validate(const SpaceParams& space) {
    if (!(space.p > 1.0) || !std::isfinite(space.p))
        throw InvalidArgument("SpaceParams: p must lie in (1, inf)");
    if (!(space.c > 0.0) || space.c > 2.0)
        throw InvalidArgument("SpaceParams: c must lie in (0, 2]");
    if (space.kappa && *space.kappa < 0.0)
        throw InvalidArgument("SpaceParams: kappa must be >= 0");
    if (space.kind == SpaceKind::Sphere && space.kappa && space.delta) {
        const double want = cap_convexity_constant(*space.kappa, *space.delta);
        if (std::abs(space.c - want) > 1e-12)
            throw InvalidArgument("SpaceParams: c does not match the cap convexity constant");
    }
}

void validate_point(const SpaceParams& space, const Point& x) {
    if (x.kind != space.kind)
        throw InvalidArgument("validate_point: point kind does not match space");
    switch (space.kind) {
    case SpaceKind::Euclidean:
        if (x.data.size() != static_cast<size_t>(x.dim)) fail_dim("validate_point");
        break;
    case SpaceKind::Sphere: {
        if (x.data.size() != static_cast<size_t>(x.dim)) fail_dim("validate_point");
        const double n = norm2(x.data);
        if (std::abs(n - 1.0) > kUnitNormTol)
            throw InvalidArgument("validate_point: sphere point is not unit norm");
        break;
    }
    case SpaceKind::Spd: {
        if (x.data.size() != static_cast<size_t>(x.dim) * x.dim)
            fail_dim("validate_point");
        if (max_asymmetry(x.dim, x.data) > kUnitNormTol)
            throw InvalidArgument("validate_point: SPD point is not symmetric");
        const SymmetricEig eig = spd_symmetric_eig(x.dim, x.data);
        if (eig.values.back() <= kEigenFloor)
            throw InvalidArgument("validate_point: SPD point is not positive definite");
        break;
    }
    }
}

GeodesicSegment make_segment(const SpaceParams& space, Point start, Point end) {
    const double len = distance(space, start, end);
    if (space.kind == SpaceKind::Sphere && len > std::numbers::pi - kAntipodalMargin)
        throw NumericalError("make_segment: sphere endpoints are antipodal");
    return GeodesicSegment{std::move(start), std::move(end), len};
}

// ---- distance / geodesic ------------------------------------------------

double distance(const SpaceParams& space, const Point& x, const Point& y) {
    check_same_space(space, x, y, "distance");
    check_cheap(space, x, "distance");
    check_cheap(space, y, "distance");
    if (x.data == y.data) return 0.0;
    switch (space.kind) {
    case SpaceKind::Euclidean: return euclidean_distance(x, y);
    case SpaceKind::Sphere: return sphere_distance(x, y);
    case SpaceKind::Spd: return spd_distance(x, y);
    }
    return 0.0;
}

Point geodesic(const SpaceParams& space, const Point& x, const Point& y, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw InvalidArgument("geodesic: t must lie in [0, 1]");
    check_same_space(space, x, y, "geodesic");
    check_cheap(space, x, "geodesic");
    check_cheap(space, y, "geodesic");
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    if (x.data == y.data) return x;
    switch (space.kind) {
    case SpaceKind::Euclidean: {
        Point z = x;
        for (size_t i = 0; i < z.data.size(); ++i)
            z.data[i] = x.data[i] + t * (y.data[i] - x.data[i]);
        return z;
    }
    case SpaceKind::Sphere: return sphere_geodesic(x, y, t);
    case SpaceKind::Spd: return spd_geodesic(x, y, t);
    }
    return x;
}

// ---- symmetric eigendecomposition --------------------------------------

SymmetricEig spd_symmetric_eig(int n, std::span<const double> m) {
    if (n <= 0 || m.size() != static_cast<size_t>(n) * n)
        throw InvalidArgument("spd_symmetric_eig: need n*n entries");
    if (max_asymmetry(n, m) > kSymmetryTol)
        throw NumericalError("spd_symmetric_eig: matrix is not symmetric");

    std::vector<double> a(m.begin(), m.end());
    symmetrize(n, a);
    const double scale = frobenius(a);

    SymmetricEig eig;
    eig.n = n;
    eig.vectors.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) eig.vectors[i * n + i] = 1.0;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return std::sqrt(2.0 * s);
    };

    const double threshold = 1e-12 * scale;
    const int max_sweeps = 100;
    bool converged = scale == 0.0 || off_norm() <= threshold;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= threshold / (n * n + 1.0)) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = 0.5 * (aqq - app) / apq;
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = cs * akp - sn * akq;
                    a[k * n + q] = sn * akp + cs * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = cs * apk - sn * aqk;
                    a[q * n + k] = sn * apk + cs * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = eig.vectors[k * n + p];
                    const double vkq = eig.vectors[k * n + q];
                    eig.vectors[k * n + p] = cs * vkp - sn * vkq;
                    eig.vectors[k * n + q] = sn * vkp + cs * vkq;
                }
            }
        }
        converged = off_norm() <= threshold;
    }
    if (!converged)
        throw NumericalError("spd_symmetric_eig: Jacobi sweeps did not converge");

    eig.values.resize(n);
    for (int i = 0; i < n; ++i) eig.values[i] = a[i * n + i];

    // sort eigenpairs descending
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return eig.values[i] > eig.values[j]; });
    SymmetricEig sorted;
    sorted.n = n;
    sorted.values.resize(n);
    sorted.vectors.assign(static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        sorted.values[k] = eig.values[order[k]];
        for (int i = 0; i < n; ++i)
            sorted.vectors[i * n + k] = eig.vectors[i * n + order[k]];
    }
    return sorted;
}

// ---- sampling ------------------------------------------------------------

Point random_point(const SpaceParams& space, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_point(space, dim, rng);
}

Point random_point(const SpaceParams& space, int dim, std::mt19937_64& rng) {
    if (dim <= 0) throw InvalidArgument("random_point: dim must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    switch (space.kind) {
    case SpaceKind::Euclidean: {
        std::vector<double> v(dim);
        for (double& x : v) x = normal(rng);
        return euclidean_point(std::move(v));
    }
    case SpaceKind::Sphere: {
        for (;;) {
            std::vector<double> v(dim);
            for (double& x : v) x = normal(rng);
            const double n = norm2(v);
            if (n < 1e-8) continue; // resample degenerate draw
            for (double& x : v) x /= n;
            return sphere_point(std::move(v));
        }
    }
    case SpaceKind::Spd: {
        // A = L L^T, L lower triangular with positive diagonal
        std::vector<double> l(static_cast<size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < i; ++j) l[i * dim + j] = normal(rng);
            l[i * dim + i] = std::abs(normal(rng)) + 0.1;
        }
        std::vector<double> a(static_cast<size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j <= i; ++j) {
                double s = 0.0;
                for (int k = 0; k <= std::min(i, j); ++k)
                    s += l[i * dim + k] * l[j * dim + k];
                a[i * dim + j] = s;
                a[j * dim + i] = s;
            }
        Point p;
        p.kind = SpaceKind::Spd;
        p.dim = dim;
        p.data = std::move(a);
        return p;
    }
    }
    throw InvalidArgument("random_point: unknown space kind");
}

Point random_point_in_cap(const SpaceParams& space, const Point& pole,
                          double cap_radius, std::mt19937_64& rng) {
    if (space.kind != SpaceKind::Sphere)
        throw InvalidArgument("random_point_in_cap: sphere only");
    if (!(cap_radius > 0.0) || cap_radius > std::numbers::pi / 2.0)
        throw InvalidArgument("random_point_in_cap: cap radius must lie in (0, pi/2]");
    check_cheap(space, pole, "random_point_in_cap");
    const long max_tries = 1000000;
    for (long i = 0; i < max_tries; ++i) {
        Point p = random_point(space, pole.dim, rng);
        if (sphere_distance(pole, p) <= cap_radius) return p;
    }
    throw NumericalError("random_point_in_cap: rejection sampling stalled");
}

double set_diameter(const SpaceParams& space, std::span<const Point> points) {
    if (points.empty())
        throw InvalidArgument("set_diameter: empty point list");
    double best = 0.0;
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            best = std::max(best, distance(space, points[i], points[j]));
    return best;
}

} // namespace geoprox
