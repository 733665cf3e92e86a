#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "trilinea/geometry.hpp"

using namespace trilinea;
using namespace trilinea::testsup;
using doctest::Approx;

TEST_CASE("line construction and coordinates") {
    Line l(vec3(1.0, 2.0, 3.0), vec3(0.0, 0.0, 5.0));
    CHECK(l.direction.norm() == Approx(1.0).epsilon(1e-15));
    CHECK(l.coord_of(l.point_at(2.75)) == Approx(2.75).epsilon(1e-14));
    CHECK(l.distance_to(vec3(4.0, 6.0, -1.0)) == Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(Line(vec3(0, 0, 0), vec3(0, 0, 0)), ValidationError);
    CHECK_THROWS_AS(Line(vec2(0, 0), vec3(1, 0, 0)), ValidationError);
    Vec one(1);
    one << 1.0;
    CHECK_THROWS_AS(Line(one, one), ValidationError);
}

TEST_CASE("common perpendicular of the unit-offset skew pair") {
    const Line li(vec3(0, 0, 0), vec3(1, 0, 0));
    const Line lj(vec3(0, 1, 1), vec3(0, 1, 0));
    const PairGeometry g = common_perpendicular(li, lj);
    CHECK(g.c == Approx(0.0).epsilon(1e-15));
    CHECK(g.dist == Approx(1.0).epsilon(1e-15));
    CHECK((g.q_i - vec3(0, 0, 0)).norm() == Approx(0.0).epsilon(1e-15));
    CHECK((g.q_j - vec3(0, 0, 1)).norm() == Approx(0.0).epsilon(1e-15));
    CHECK(g.t_foot_i == Approx(0.0).epsilon(1e-15));
    CHECK(g.t_foot_j == Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("common perpendicular invariants on random pairs") {
    Rng rng(71u);
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 5; ++rep) {
        Vec a1(3), a2(3), d1(3), d2(3);
        for (int i = 0; i < 3; ++i) {
            a1[i] = pos(rng);
            a2[i] = pos(rng);
            d1[i] = nd(rng);
            d2[i] = nd(rng);
        }
        const Line li(a1, d1), lj(a2, d2);
        if (std::abs(li.direction.dot(lj.direction)) > 0.9) continue;
        const PairGeometry g = common_perpendicular(li, lj);

        const Vec seg = g.q_j - g.q_i;
        CHECK(std::abs(seg.dot(li.direction)) < 1e-10);
        CHECK(std::abs(seg.dot(lj.direction)) < 1e-10);
        CHECK(g.dist == Approx(seg.norm()).epsilon(1e-12));
        CHECK(li.distance_to(g.q_i) < 1e-12);
        CHECK(lj.distance_to(g.q_j) < 1e-12);

        // against a dense grid + descent minimizer that never touches the library
        CHECK(g.dist == Approx(brute_pair_distance(li, lj)).epsilon(1e-8));

        const PairGeometry h = common_perpendicular(lj, li);
        CHECK(h.c == Approx(g.c).epsilon(1e-14));
        CHECK(h.dist == Approx(g.dist).epsilon(1e-14));
        CHECK((h.q_i - g.q_j).norm() < 1e-10);
        CHECK((h.q_j - g.q_i).norm() < 1e-10);
    }
}

TEST_CASE("intersecting lines have coincident feet") {
    const Line li(vec3(1, 2, 3), vec3(1, 0, 0));
    const Line lj(vec3(1, 2, 3), vec3(0, 1, 1));
    const PairGeometry g = common_perpendicular(li, lj);
    CHECK(g.dist == Approx(0.0).epsilon(1e-14));
    CHECK((g.q_i - vec3(1, 2, 3)).norm() < 1e-12);
    CHECK((g.q_j - vec3(1, 2, 3)).norm() < 1e-12);
}

TEST_CASE("parallel pair is rejected") {
    const Line li(vec3(0, 0, 0), vec3(1, 0, 0));
    const Line lj(vec3(0, 1, 0), vec3(-2, 0, 0));
    CHECK_THROWS_AS(common_perpendicular(li, lj), ParallelLines);
}

TEST_CASE("foot offset converts between the two foot frames of a shared line") {
    const Line li(vec3(0, 0, 0), vec3(1, 0, 0));
    const Line lj(vec3(0, 1, 1), vec3(0, 1, 0));  // foot on li at x = 0
    const Line lk(vec3(3, 0, 1), vec3(0, 1, 0));  // foot on li at x = 3
    const PairGeometry gij = common_perpendicular(li, lj);
    const PairGeometry gik = common_perpendicular(li, lk);
    const double e = foot_offset(li, gij, gik);
    CHECK(e == Approx(3.0).epsilon(1e-14));
    // t_ij = t_ik + e for any point on li
    const double x = -1.7;
    const double t_ij = x - gij.t_foot_i;
    const double t_ik = x - gik.t_foot_i;
    CHECK(t_ij == Approx(t_ik + e).epsilon(1e-14));
    CHECK(std::abs(e) == Approx((gij.q_i - gik.q_i).norm()).epsilon(1e-12));
    CHECK(foot_offset(li, gik, gij) == Approx(-e).epsilon(1e-15)); // antisymmetry
}

TEST_CASE("scene classification per class") {
    SUBCASE("concurrent planar") {
        const double deg = 3.141592653589793 / 180.0;
        const SceneClass c = classify_scene(Line(vec2(0, 0), vec2(1, 0)),
                                            Line(vec2(0, 0), vec2(std::cos(60 * deg), std::sin(60 * deg))),
                                            Line(vec2(0, 0), vec2(std::cos(120 * deg), std::sin(120 * deg))));
        CHECK(c.tag == SceneTag::ConcurrentPlanar);
        REQUIRE(c.meet.has_value());
        CHECK((*c.meet - vec2(0, 0)).norm() < 1e-12);
    }
    SUBCASE("common perpendicular axis") {
        const double s = 1.0 / std::sqrt(2.0);
        const SceneClass c = classify_scene(Line(vec3(0, 0, 0), vec3(1, 0, 0)),
                                            Line(vec3(0, 0, 1), vec3(0, 1, 0)),
                                            Line(vec3(0, 0, -2), vec3(s, s, 0)));
        CHECK(c.tag == SceneTag::CommonPerpendicularAxis);
        REQUIRE(c.axis.has_value());
        CHECK(std::abs(std::abs(c.axis->direction[2]) - 1.0) < 1e-10);
        CHECK(c.axis->distance_to(vec3(0, 0, 0)) < 1e-8);
    }
    SUBCASE("all parallel") {
        const SceneClass c = classify_scene(Line(vec2(0, 0), vec2(1, 0)),
                                            Line(vec2(0, 1), vec2(1, 0)),
                                            Line(vec2(0, 3), vec2(-1, 0)));
        CHECK(c.tag == SceneTag::AllParallel);
    }
    SUBCASE("generic skew") {
        Rng rng(5u);
        const Scene s = random_generic_r3(rng);
        CHECK(s.cls.tag == SceneTag::Generic);
    }
    SUBCASE("duplicate line") {
        CHECK_THROWS_AS(classify_scene(Line(vec2(0, 0), vec2(1, 0)),
                                       Line(vec2(5, 0), vec2(-1, 0)),
                                       Line(vec2(0, 1), vec2(0, 1))),
                        DegenerateScene);
    }
}

TEST_CASE("classification is invariant under rigid motion and relabeling") {
    Rng rng(81u);
    const Built b = random_feasible_kind(1, rng); // axis scene in R^3
    REQUIRE(b.scene.cls.tag == SceneTag::CommonPerpendicularAxis);

    const Eigen::MatrixXd Q = random_rotation(3, rng);
    const Vec T = vec3(0.3, -1.1, 0.7);
    std::array<Line, 3> moved;
    for (int i = 0; i < 3; ++i)
        moved[static_cast<size_t>(i)] =
            Line(Q * b.scene.lines[static_cast<size_t>(i)].anchor + T,
                 Q * b.scene.lines[static_cast<size_t>(i)].direction);
    CHECK(classify_scene(moved[0], moved[1], moved[2]).tag == SceneTag::CommonPerpendicularAxis);
    CHECK(classify_scene(moved[2], moved[0], moved[1]).tag == SceneTag::CommonPerpendicularAxis);
    CHECK(classify_scene(moved[1], moved[0], moved[2]).tag == SceneTag::CommonPerpendicularAxis);
}

TEST_CASE("near-parallel pair sets the warning flag without flipping the class") {
    const double eps = 1e-5; // cos gap ~ 5e-11, inside the warning band
    const Line l1(vec2(0, 0), vec2(1, 0));
    const Line l2(vec2(0, 1), vec2(1, eps));
    const Line l3(vec2(2, 0), vec2(0, 1));
    const SceneClass c = classify_scene(l1, l2, l3);
    CHECK(c.near_parallel_warning);
    CHECK(c.tag != SceneTag::AllParallel);
}

TEST_CASE("projection onto a hyperplane") {
    const std::vector<Line> lines = {Line(vec4(0, 0, 0, 0.5), vec4(1, 0, 0, 0)),
                                     Line(vec4(0, 1, 0, -0.2), vec4(0, 1, 0.3, 0)),
                                     Line(vec4(1, 0, 1, 0.9), vec4(0.2, 1, 1, 0))};
    const Vec w = vec4(0, 0, 0, 1);
    const auto flat = project_out(lines, w);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(flat[i].anchor[3]) < 1e-15);
        CHECK(std::abs(flat[i].direction[3]) < 1e-15);
        // directions untouched up to renormalization
        CHECK(std::abs(flat[i].direction.dot(lines[i].direction)) == Approx(1.0).epsilon(1e-12));
    }
    // pairwise cosines preserved
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            CHECK(flat[i].direction.dot(flat[j].direction) ==
                  Approx(lines[i].direction.dot(lines[j].direction)).epsilon(1e-12));

    CHECK_THROWS_AS(project_out(lines, vec4(0, 0, 1, 0)), NotPerpendicular);
    CHECK_THROWS_AS(project_out(lines, vec4(0, 0, 0, 2)), ValidationError);
}
