#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trilinea/geometry.hpp"
#include "trilinea/mechanism.hpp"

namespace trilinea {

// One static placement of the triangle with a vertex on each line.
struct Configuration {
    double theta = 0.0;        // parametrization angle of the base pair
    std::array<double, 3> t{}; // anchor-frame coordinate of each vertex on its line
    Vec p1, p2, p3;
    double residual = 0.0;     // max edge-length violation (vertices lie on lines exactly)
    bool near_tangent = false; // recovered from a grazing double root
};

enum class SolutionKind { Finite, Continuum };
const char* to_string(SolutionKind k);

struct ConfigurationSet {
    SolutionKind kind = SolutionKind::Finite;
    std::vector<Configuration> configurations; // Finite only; sorted by (theta, t3)
    double degenerate_fraction = 0.0;          // share of grid angles admitting the triangle
    std::vector<MotionState> witness;          // Continuum only: sampled motion
    int count() const { return static_cast<int>(configurations.size()); }
};

// Elimination record at a fixed base-pair angle.  With t1 and t2 pinned, the
// two remaining edge constraints are monic quadratics in t3; subtracting them
// cancels the squared term and leaves A*t3 + B = 0.
struct EliminationSlice {
    double theta = 0.0;
    double t1 = 0.0, t2 = 0.0; // anchor coordinates on lines 1 and 2
    double A = 0.0, B = 0.0;
    std::optional<double> t3;  // -B/A when the linear relation is usable
    bool degenerate = false;   // some t3 satisfies both quadratics (not just the relation)
    double consistency = 0.0;  // best shared-root defect of the two quadratics
};

// Requires lines 1 and 2 non-parallel: they carry the angle parametrization.
EliminationSlice eliminate_t3(double theta, const Scene& scene, const TriangleSpec& tri);

struct SolveOptions {
    int grid_size = 4096;
    int refine_iters = 50;
    double tolerance = 1e-8;    // residual acceptance, relative to triangle scale
    double dedup_radius = 1e-6; // coordinate dedup radius, relative to triangle scale
};

// Enumerates every placement, or detects that they form a one-parameter
// family (Continuum) and returns a witness motion instead.
ConfigurationSet solve_configurations(const Scene& scene, const TriangleSpec& tri,
                                      const SolveOptions& opts = {});

struct OracleOptions {
    int n_samples = 100000;           // dense sweep resolution (>= 100000 enforced)
    double tolerance = 1e-7;          // zero acceptance on distance, relative to scale
    double continuum_fraction = 0.10; // near-zero share that flags a continuum
};

struct OracleResult {
    SolutionKind kind = SolutionKind::Finite;
    std::vector<Configuration> configurations;
    double near_zero_fraction = 0.0;
};

// Independent cross-check for solve_configurations: at each angle the rigid
// carry of the third vertex sweeps a sphere, and the sphere's distance to the
// third line is minimized directly.  Deliberately shares no algorithmic step
// with the elimination-based solver.
OracleResult oracle_sweep(const Scene& scene, const TriangleSpec& tri,
                          const OracleOptions& opts = {});

} // namespace trilinea
