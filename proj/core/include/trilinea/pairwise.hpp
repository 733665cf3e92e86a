#pragma once

// Two-line kinematics: the ellipse traced in (t_i, t_j) space by a rigid
// segment of length d sliding with one endpoint on each line, and the range
// interval each endpoint sweeps.

#include <utility>

#include "trilinea/geometry.hpp"

namespace trilinea {

struct EllipseParams {
    double a = 0.0;     // d_eff / sqrt(2 (1 - c))
    double b = 0.0;     // d_eff / sqrt(2 (1 + c))
    double c = 0.0;     // cosine of the line angle
    double d_eff = 0.0; // sqrt(d^2 - dist^2)
};

// Throws EdgeTooShort unless d exceeds the line distance by more than 1e-12.
EllipseParams ellipse_params(double d, const PairGeometry& pair);

// Foot-frame coordinates of the two endpoints at angle theta:
//   t_i = a cos(theta) - b sin(theta),  t_j = a cos(theta) + b sin(theta).
// theta = 0 puts both endpoints at +a, on the same side of the feet.
std::pair<double, double> segment_position(double theta, const EllipseParams& e);

struct RangeInterval {
    double center_t = 0.0;    // anchor-frame coordinate of the interval center
    double half_length = 0.0; // d_eff / sin(alpha)

    double lo() const { return center_t - half_length; }
    double hi() const { return center_t + half_length; }
    double full_length() const { return 2.0 * half_length; }
};

// Range swept on one line of the pair: centered at the common-perpendicular
// foot, full length 2 d_eff / sin(alpha).  `which` is 0 for the first line of
// the pair, 1 for the second.
RangeInterval range_interval(const EllipseParams& e, const PairGeometry& pair, int which);

} // namespace trilinea
