// Hot-path benchmarks: pair geometry, single motion states, full traces,
// placement enumeration, and the sweep oracle.
#include <benchmark/benchmark.h>

#include <cmath>

#include "trilinea/geometry.hpp"
#include "trilinea/mechanism.hpp"
#include "trilinea/solver.hpp"

using namespace trilinea;

namespace {

Scene planar_scene() {
    const Vec o = vec2(0.4, -0.3);
    return make_scene(Line{o, vec2(1.0, 0.0)},
                      Line{o, vec2(std::cos(2.0), std::sin(2.0))},
                      Line{o, vec2(std::cos(4.1), std::sin(4.1))});
}

TriangleSpec planar_triangle(const Scene& s) {
    // edge lengths chosen so all three pair ratios coincide
    const double R = 2.0;
    auto d = [&](int i, int j) {
        return R * std::abs(s.pair(i, j).sin_alpha());
    };
    return TriangleSpec(d(0, 1), d(0, 2), d(1, 2));
}

Scene generic_scene() {
    return make_scene(Line{vec3(0.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0)},
                      Line{vec3(0.0, 1.0, 0.3), vec3(0.0, 1.0, 0.2)},
                      Line{vec3(1.0, -0.2, 1.1), vec3(0.3, 0.1, 1.0)});
}

void BM_CommonPerpendicular(benchmark::State& state) {
    const Line l1{vec3(0.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0)};
    const Line l2{vec3(0.0, 1.0, 0.3), vec3(0.0, 1.0, 0.2)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(common_perpendicular(l1, l2));
    }
}
BENCHMARK(BM_CommonPerpendicular);

void BM_MotionState(benchmark::State& state) {
    const Scene s = planar_scene();
    const TriangleSpec tri = planar_triangle(s);
    const int side = feasibility(s, tri).side.value_or(1);
    double theta = 0.0;
    for (auto _ : state) {
        theta += 1e-3;
        benchmark::DoNotOptimize(motion_state(theta, s, tri, side));
    }
}
BENCHMARK(BM_MotionState);

void BM_Trace(benchmark::State& state) {
    const Scene s = planar_scene();
    const TriangleSpec tri = planar_triangle(s);
    const int side = feasibility(s, tri).side.value_or(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace(s, tri, side, 1024));
    }
}
BENCHMARK(BM_Trace);

void BM_Solve(benchmark::State& state) {
    const Scene s = generic_scene();
    const TriangleSpec tri(1.0, 1.1, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_configurations(s, tri));
    }
}
BENCHMARK(BM_Solve);

void BM_OracleSweep(benchmark::State& state) {
    const Scene s = generic_scene();
    const TriangleSpec tri(1.0, 1.1, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_sweep(s, tri));
    }
}
BENCHMARK(BM_OracleSweep);

} // namespace

BENCHMARK_MAIN();
