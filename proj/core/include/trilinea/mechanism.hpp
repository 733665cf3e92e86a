#pragma once

// Rigid-triangle kinematics on three fixed lines: feasibility of a continuous
// motion, the motion itself, per-line ranges, the circumcircle invariant and
// the rolling-circle model it reduces to in the plane.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trilinea/geometry.hpp"
#include "trilinea/pairwise.hpp"

namespace trilinea {

struct TriangleSpec {
    double d12 = 0.0, d13 = 0.0, d23 = 0.0;
    bool degenerate = false; // set when allow_degenerate waived the strict inequality

    TriangleSpec() = default;
    // Validates positivity and the strict triangle inequality.  With
    // allow_degenerate the violation is kept and only flagged (solver use).
    TriangleSpec(double d12, double d13, double d23, bool allow_degenerate = false);

    // edge between vertices i and j (0-based, i != j)
    double edge(int i, int j) const;
    double max_edge() const { return std::max({d12, d13, d23}); }
    // residual thresholds everywhere are relative to this
    double scale() const { return std::max(max_edge(), 1.0); }
};

// Three lines plus their classification and pairwise geometry.
struct Scene {
    std::array<Line, 3> lines;
    SceneClass cls;
    // pair order: (1,2), (1,3), (2,3); disengaged for parallel pairs
    std::array<std::optional<PairGeometry>, 3> pairs;

    int dim() const { return lines[0].dim(); }
    static int pair_index(int i, int j); // 0-based vertex ids
    const PairGeometry& pair(int i, int j) const;
};

Scene make_scene(const Line& l1, const Line& l2, const Line& l3);

enum class Verdict { FeasibleMechanism, FeasibleParallel, Infeasible };
const char* to_string(Verdict v);

struct FeasibilityReport {
    Verdict verdict = Verdict::Infeasible;
    SceneTag scene_class = SceneTag::Generic;
    // sqrt(d_ij^2 - D_ij^2) / sin(alpha_ij), pair order 12, 13, 23
    std::optional<std::array<double, 3>> ratios;
    // per-line sweep intervals (anchor frame), only for the mechanism branch
    std::optional<std::array<RangeInterval, 3>> ranges;
    // the triangle orientation that realizes the motion
    std::optional<int> side;
    std::string reason; // empty when feasible
    bool near_feasible = false;
    bool near_parallel_warning = false;
};

// Decides whether the triangle can move continuously with one vertex per
// line.  Never throws for honest infeasibility; DegenerateScene propagates.
FeasibilityReport feasibility(const Scene& scene, const TriangleSpec& tri);

// Third vertex from two placed ones, planar version: the two mirror
// solutions are selected by side = +1/-1 = sign of the triangle orientation
// (cross product) in the given frame.
Vec carry_third_vertex(const Vec& p1, const Vec& p2, const TriangleSpec& tri,
                       const PlanarFrame& frame, int side);

// General version: the rigid-carry locus {x : |x-p1| = d13, |x-p2| = d23} is
// intersected with l3; candidates are filtered by orientation in the frame.
// Throws NoThirdVertex when the locus misses l3, AmbiguousSide when two
// on-line candidates match the requested side (isolated tangency).
Vec carry_third_vertex(const Vec& p1, const Vec& p2, const TriangleSpec& tri,
                       const Line& l3, const PlanarFrame& frame, int side);

struct MotionState {
    double theta = 0.0;
    Vec p1, p2, p3;
    // foot-frame coordinates, order: t_12, t_21, t_13, t_31, t_23, t_32
    std::array<double, 6> t{};
};

// State of the motion at one angle.  Requires a FeasibleMechanism verdict.
MotionState motion_state(double theta, const Scene& scene, const TriangleSpec& tri, int side);

// n_samples states on the uniform grid theta_k = 2 pi k / n (mechanism) or,
// for the parallel branch, translation parameters uniform over
// [-scale, +scale].  n_samples >= 2.  The side never switches mid-trace;
// isolated side ambiguities are resolved by nearest-to-previous continuity.
std::vector<MotionState> trace(const Scene& scene, const TriangleSpec& tri, int side, int n_samples);

struct CircumcircleReport {
    bool applicable = true; // false on the parallel branch: no circle there
    Vec fixed_center;       // ambient meet (or axis point) the centers circle around
    double radius = 0.0;    // shared circumradius = rolling-circle radius
    double max_radius_dev = 0.0; // worst |r_k - radius|
    double max_center_dev = 0.0; // worst || |c_k - fixed_center| - radius ||
    double max_dev = 0.0;        // max of the two above
};

// Checks that the three vertices stay concyclic with a constant radius while
// the center rides a circle of the same radius about the meet.  Planar and
// axis scenes only (axis scenes are checked in the plane orthogonal to the
// axis); Generic scenes throw NotPlanarizable.
CircumcircleReport circumcircle_check(const std::vector<MotionState>& states, const Scene& scene);

struct RollingCircleModel {
    Vec center;                   // fixed circle center (the meet)
    double R = 0.0;               // fixed circle radius
    double r = 0.0;               // rolling circle radius, exactly R / 2
    std::array<double, 3> phases{}; // direction angle of each line in the frame
    PlanarFrame frame;
};

// Rolling-circle model of a feasible planar concurrent mechanism;
// R is the common range ratio d_eff / sin(alpha).
RollingCircleModel rolling_model(const Scene& scene, const TriangleSpec& tri);

// Point traced by the marked phase phi at rolling angle theta:
//   center + R cos(theta - phi) * u(phi).
// The traced set is the diameter segment [-R, R] * u(phi).
Vec rolling_circle_point(const RollingCircleModel& model, double theta, double phi);

// Max distance between the mechanism motion and the rolling-circle motion
// after aligning the two angle parametrizations by one phase shift (fitted
// least-squares at 8 samples; both rolling senses are tried).
double rolling_equivalence(const Scene& scene, const TriangleSpec& tri,
                           const RollingCircleModel& model, int n_samples = 2048);

// Projection along a common normal w: lines via project_out, edge lengths
// shortened by the per-pair axial offsets (d'^2 = d^2 - ((a_i - a_j).w)^2).
std::pair<std::array<Line, 3>, TriangleSpec>
project_scene(const Scene& scene, const TriangleSpec& tri, const Vec& w);

// Orientation / rendering frame of a planar or axis scene.
PlanarFrame scene_frame(const Scene& scene);

} // namespace trilinea
