#pragma once

// Lines in R^n, common perpendiculars, and scene classification.
//
// Conventions used throughout the library:
//  * a line is anchor + t * direction with a unit direction vector;
//  * "anchor frame" coordinates measure t from the anchor, "foot frame"
//    coordinates measure from a common-perpendicular foot.  They differ by
//    the foot's anchor coordinate (PairGeometry::t_foot_*).

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "trilinea/errors.hpp"

namespace trilinea {

using Vec = Eigen::VectorXd;

inline Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}
inline Vec vec3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}
inline Vec vec4(double x, double y, double z, double w) {
    Vec v(4);
    v << x, y, z, w;
    return v;
}

// |cos| at or above this means "parallel".
inline constexpr double kParallelCos = 1.0 - 1e-12;
// |cos| above this (but below kParallelCos) gets a near-parallel warning.
inline constexpr double kNearParallelCos = 1.0 - 1e-9;

struct Line {
    Vec anchor;
    Vec direction; // unit length after construction

    Line() = default;
    Line(Vec a, Vec d);

    int dim() const { return static_cast<int>(anchor.size()); }
    Vec point_at(double t) const { return anchor + t * direction; }
    // anchor-frame coordinate of the orthogonal projection of p
    double coord_of(const Vec& p) const { return direction.dot(p - anchor); }
    double distance_to(const Vec& p) const;
};

// Relative position of two non-parallel lines.
struct PairGeometry {
    double c = 0.0;      // cosine of the angle between directions, in (-1, 1)
    double alpha = 0.0;  // angle in (0, pi)
    Vec q_i, q_j;        // feet of the common perpendicular (q_i on the first line)
    double dist = 0.0;   // |q_i - q_j|
    double t_foot_i = 0.0; // anchor-frame coordinate of q_i on the first line
    double t_foot_j = 0.0; // anchor-frame coordinate of q_j on the second line

    double sin_alpha() const { return std::sqrt(std::max(0.0, 1.0 - c * c)); }
};

// Closest-approach geometry of two lines.  Intersecting lines (dist ~ 0) are
// fine: both feet coincide at the intersection.  Throws ParallelLines when
// |cos| >= 1 - 1e-12.
PairGeometry common_perpendicular(const Line& li, const Line& lj);

// Signed offset e such that, for a point p on `li` with foot-frame
// coordinates t_ij (from g_ij.q_i) and t_ik (from g_ik.q_i),
//     t_ij = t_ik + e    holds exactly.
// Both PairGeometry arguments must have `li` as their *first* line.
// Antisymmetric under swapping j and k; |e| = |q_ij - q_ik|.
double foot_offset(const Line& li, const PairGeometry& g_ij, const PairGeometry& g_ik);

enum class SceneTag {
    AllParallel,
    ConcurrentPlanar,
    CommonPerpendicularAxis,
    Generic,
};

const char* to_string(SceneTag t);

struct SceneClass {
    SceneTag tag = SceneTag::Generic;
    std::optional<Vec> meet;   // ConcurrentPlanar: the common point
    std::optional<Line> axis;  // CommonPerpendicularAxis: the axis
    bool near_parallel_warning = false; // some pair sits close to the parallel threshold
};

// Classify the mutual position of three lines.  Throws DegenerateScene when
// two of them are the same line.  Concurrent planar scenes embedded in R^3+
// would also admit a perpendicular axis through the meet; the planar tag wins,
// so CommonPerpendicularAxis always means "axis case, not planar-concurrent".
SceneClass classify_scene(const Line& l1, const Line& l2, const Line& l3);

// Project lines onto the hyperplane orthogonal to the unit vector w
// (x -> x - (x.w) w).  Every line direction must already be orthogonal to w
// within 1e-10, otherwise NotPerpendicular is thrown.
std::vector<Line> project_out(const std::vector<Line>& lines, const Vec& w);

// Orthonormal plane basis used for side conventions, phases and rendering.
struct PlanarFrame {
    Vec origin, ex, ey;
    // 2-d coordinates of an ambient point
    double u(const Vec& p) const { return ex.dot(p - origin); }
    double v(const Vec& p) const { return ey.dot(p - origin); }
};

} // namespace trilinea
