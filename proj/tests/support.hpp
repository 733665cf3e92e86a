#pragma once

// Shared scene builders and slow independent cross-checks for the test
// suites.  Nothing here calls into the solver internals: brute-force checks
// work straight from the public geometry types so they can disagree with the
// library when the library is wrong.

#include <array>
#include <optional>
#include <random>
#include <string>

#include "trilinea/geometry.hpp"
#include "trilinea/mechanism.hpp"

namespace trilinea::testsup {

using Rng = std::mt19937_64;

// Haar-ish random rotation from the QR of a Gaussian matrix.
Eigen::MatrixXd random_rotation(int dim, Rng& rng);

struct Built {
    Scene scene;
    TriangleSpec tri;
    double R = 0.0;           // common range ratio of the built mechanism
    std::optional<Vec> axis_w; // unit common normal used to lift, if any
};

// Three concurrent lines in the plane at the given headings; edge lengths
// chosen so the common-ratio criterion holds with ratio R.
Built concurrent_planar(double R, const std::array<double, 3>& phis, const Vec& meet);

// Same construction lifted to dim 3 or 4: directions stay in a coordinate
// plane, anchors are offset along the last axis, then the whole scene gets a
// random rotation + translation.
Built lifted_axis(int dim, double R, const std::array<double, 3>& phis,
                  const std::array<double, 3>& offsets, Rng& rng);

// Horizontal planar lines y = h_i with the triangle spanned by vertex
// x-offsets (0, x2, x3).
Built parallel_planar(const std::array<double, 3>& heights, double x2, double x3);

// Random feasible scene, any class, any dimension up to 4.
Built random_feasible(Rng& rng);
// Random feasible scene of a forced kind: 0 planar, 1 axis R^3, 2 axis R^4.
Built random_feasible_kind(int kind, Rng& rng);

// Random scene with no special structure (almost surely Generic).
Scene random_generic_r3(Rng& rng);
TriangleSpec random_triangle(Rng& rng, double lo = 0.8, double hi = 2.5);

// Minimal distance between two lines by dense grid + alternating refinement;
// completely independent of common_perpendicular.
double brute_pair_distance(const Line& li, const Line& lj, int grid = 2001);

// Golden-section minimizer for smooth 1-d functions.
template <class F>
double golden_min(F f, double lo, double hi, int iters = 120) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iters; ++k) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

struct Extent {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Extreme anchor-frame coordinates reached by vertex `vertex` (0-based) over
// the whole motion, grid-scanned and golden-polished.
Extent polished_extent(const Scene& scene, const TriangleSpec& tri, int side, int vertex,
                       int grid = 4096);

// Scratch files for io / cli tests.
std::string temp_dir();
std::string write_temp(const std::string& name, const std::string& contents);

} // namespace trilinea::testsup
