#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "trilinea/pairwise.hpp"

using namespace trilinea;
using namespace trilinea::testsup;
using doctest::Approx;

namespace {

PairGeometry unit_skew_pair() {
    // x-axis and the y-direction line through (0,1,1): c = 0, dist = 1
    return common_perpendicular(Line(vec3(0, 0, 0), vec3(1, 0, 0)),
                                Line(vec3(0, 1, 1), vec3(0, 1, 0)));
}

} // namespace

TEST_CASE("ellipse constants for the perpendicular cases") {
    SUBCASE("intersecting perpendicular pair") {
        const PairGeometry g = common_perpendicular(Line(vec2(0, 0), vec2(1, 0)),
                                                    Line(vec2(0, 0), vec2(0, 1)));
        const EllipseParams e = ellipse_params(std::sqrt(2.0), g);
        CHECK(e.d_eff == Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(e.a == Approx(1.0).epsilon(1e-14));
        CHECK(e.b == Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("skew perpendicular pair at distance 1") {
        const EllipseParams e = ellipse_params(std::sqrt(3.0), unit_skew_pair());
        CHECK(e.d_eff == Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(e.a == Approx(1.0).epsilon(1e-14));
        CHECK(e.b == Approx(1.0).epsilon(1e-14));
        // witness placement: p1=(1,0,0), p2=(0,1,1) really is sqrt(3) apart
        CHECK((vec3(1, 0, 0) - vec3(0, 1, 1)).norm() == Approx(std::sqrt(3.0)).epsilon(1e-15));
    }
    SUBCASE("edge shorter than the gap") {
        CHECK_THROWS_AS(ellipse_params(1.0, [] {
                            PairGeometry g = unit_skew_pair();
                            g.dist = 2.0;
                            return g;
                        }()),
                        EdgeTooShort);
    }
}

TEST_CASE("ellipse constants satisfy their defining relations") {
    Rng rng(17u);
    std::uniform_real_distribution<double> len(0.1, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Scene s = random_generic_r3(rng);
        const PairGeometry& g = s.pair(0, 1);
        const double d = g.dist + len(rng);
        const EllipseParams e = ellipse_params(d, g);
        CHECK(e.d_eff == Approx(std::sqrt(d * d - g.dist * g.dist)).epsilon(1e-12));
        CHECK(e.a == Approx(e.d_eff / std::sqrt(2.0 * (1.0 - e.c))).epsilon(1e-12));
        CHECK(e.b == Approx(e.d_eff / std::sqrt(2.0 * (1.0 + e.c))).epsilon(1e-12));
    }
}

TEST_CASE("segment positions conserve the pair constraint") {
    Rng rng(31u);
    std::uniform_real_distribution<double> len(0.2, 2.5);
    for (int rep = 0; rep < 10; ++rep) {
        const Scene s = random_generic_r3(rng);
        const PairGeometry& g = s.pair(1, 2);
        const double d = g.dist + len(rng);
        const EllipseParams e = ellipse_params(d, g);
        for (int k = 0; k < 256; ++k) {
            const double theta = 2.0 * 3.141592653589793 * k / 256 + 0.01;
            const auto [ti, tj] = segment_position(theta, e);
            const double lhs = ti * ti + tj * tj - 2.0 * e.c * ti * tj;
            CHECK(std::abs(lhs - e.d_eff * e.d_eff) < 1e-10 * e.d_eff * e.d_eff);
            // and in ambient space: the two points really are d apart
            const Vec p = g.q_i + ti * s.lines[1].direction;
            const Vec q = g.q_j + tj * s.lines[2].direction;
            CHECK((p - q).norm() == Approx(d).epsilon(1e-11));
        }
    }
}

TEST_CASE("range interval matches the extreme foot coordinates") {
    const PairGeometry g = common_perpendicular(Line(vec2(0, 0), vec2(1, 0)),
                                                Line(vec2(0, 0), vec2(std::cos(1.1), std::sin(1.1))));
    const double d = 1.7;
    const EllipseParams e = ellipse_params(d, g);
    const RangeInterval r = range_interval(e, g, 0);
    CHECK(r.center_t == Approx(0.0).epsilon(1e-14));
    CHECK(r.half_length == Approx(e.d_eff / std::sin(1.1)).epsilon(1e-12));
    CHECK(r.full_length() == Approx(2.0 * r.half_length).epsilon(1e-15));
    CHECK(r.lo() == Approx(r.center_t - r.half_length).epsilon(1e-15));
    CHECK(r.hi() == Approx(r.center_t + r.half_length).epsilon(1e-15));

    // scan the parametrization for the realized extremes
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 200000; ++k) {
        const double theta = 2.0 * 3.141592653589793 * k / 200000;
        lo = std::min(lo, segment_position(theta, e).first);
        hi = std::max(hi, segment_position(theta, e).first);
    }
    CHECK(hi == Approx(r.half_length).epsilon(1e-8));
    CHECK(lo == Approx(-r.half_length).epsilon(1e-8));
}
