#include "trilinea/pairwise.hpp"

#include <cmath>

namespace trilinea {

EllipseParams ellipse_params(double d, const PairGeometry& pair) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw ValidationError("segment length must be positive and finite");
    if (d - pair.dist <= 1e-12)
        throw EdgeTooShort("segment shorter than the distance between its lines");
    EllipseParams e;
    e.c = pair.c;
    e.d_eff = std::sqrt(d * d - pair.dist * pair.dist);
    e.a = e.d_eff / std::sqrt(2.0 * (1.0 - pair.c));
    e.b = e.d_eff / std::sqrt(2.0 * (1.0 + pair.c));
    return e;
}

std::pair<double, double> segment_position(double theta, const EllipseParams& e) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {e.a * ct - e.b * st, e.a * ct + e.b * st};
}

RangeInterval range_interval(const EllipseParams& e, const PairGeometry& pair, int which) {
    if (which != 0 && which != 1)
        throw ValidationError("range_interval: which must be 0 or 1");
    RangeInterval r;
    r.center_t = which == 0 ? pair.t_foot_i : pair.t_foot_j;
    r.half_length = e.d_eff / pair.sin_alpha();
    return r;
}

} // namespace trilinea
