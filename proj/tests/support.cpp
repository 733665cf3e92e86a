#include "support.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "trilinea/errors.hpp"

namespace trilinea::testsup {

namespace fs = std::filesystem;

Eigen::MatrixXd random_rotation(int dim, Rng& rng) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = nd(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd R = qr.matrixQR();
    for (int j = 0; j < dim; ++j)
        if (R(j, j) < 0) Q.col(j) *= -1.0;
    return Q;
}

namespace {

double edge_of(double R, double phi_a, double phi_b, double off_a = 0.0, double off_b = 0.0) {
    const double planar = R * std::abs(std::sin(phi_a - phi_b));
    return std::hypot(planar, off_a - off_b);
}

} // namespace

Built concurrent_planar(double R, const std::array<double, 3>& phis, const Vec& meet) {
    std::array<Line, 3> lines;
    for (int i = 0; i < 3; ++i)
        lines[static_cast<size_t>(i)] =
            Line(meet, vec2(std::cos(phis[static_cast<size_t>(i)]),
                            std::sin(phis[static_cast<size_t>(i)])));
    Built b{make_scene(lines[0], lines[1], lines[2]),
            TriangleSpec(edge_of(R, phis[0], phis[1]), edge_of(R, phis[0], phis[2]),
                         edge_of(R, phis[1], phis[2])),
            R, std::nullopt};
    return b;
}

Built lifted_axis(int dim, double R, const std::array<double, 3>& phis,
                  const std::array<double, 3>& offsets, Rng& rng) {
    const Eigen::MatrixXd Q = random_rotation(dim, rng);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    Vec T(dim);
    for (int i = 0; i < dim; ++i) T[i] = shift(rng);

    std::array<Line, 3> lines;
    for (int i = 0; i < 3; ++i) {
        Vec a = Vec::Zero(dim), d = Vec::Zero(dim);
        a[dim - 1] = offsets[static_cast<size_t>(i)];
        d[0] = std::cos(phis[static_cast<size_t>(i)]);
        d[1] = std::sin(phis[static_cast<size_t>(i)]);
        lines[static_cast<size_t>(i)] = Line(Q * a + T, Q * d);
    }
    Vec w = Vec::Zero(dim);
    w[dim - 1] = 1.0;
    Built b{make_scene(lines[0], lines[1], lines[2]),
            TriangleSpec(edge_of(R, phis[0], phis[1], offsets[0], offsets[1]),
                         edge_of(R, phis[0], phis[2], offsets[0], offsets[2]),
                         edge_of(R, phis[1], phis[2], offsets[1], offsets[2])),
            R, Vec(Q * w)};
    return b;
}

Built parallel_planar(const std::array<double, 3>& heights, double x2, double x3) {
    std::array<Line, 3> lines;
    for (int i = 0; i < 3; ++i)
        lines[static_cast<size_t>(i)] =
            Line(vec2(0.0, heights[static_cast<size_t>(i)]), vec2(1.0, 0.0));
    const double x[3] = {0.0, x2, x3};
    auto edge = [&](int i, int j) {
        return std::hypot(x[i] - x[j],
                          heights[static_cast<size_t>(i)] - heights[static_cast<size_t>(j)]);
    };
    return Built{make_scene(lines[0], lines[1], lines[2]),
                 TriangleSpec(edge(0, 1), edge(0, 2), edge(1, 2)), 0.0, std::nullopt};
}

namespace {

std::array<double, 3> random_headings(Rng& rng) {
    std::uniform_real_distribution<double> base(0.0, 3.141592653589793);
    std::uniform_real_distribution<double> gap(0.25, 1.2);
    const double p1 = base(rng);
    const double g1 = gap(rng), g2 = gap(rng);
    return {p1, p1 + g1, p1 + g1 + g2};
}

std::array<double, 3> random_offsets(Rng& rng) {
    std::uniform_real_distribution<double> off(-0.8, 0.8);
    for (;;) {
        std::array<double, 3> o = {off(rng), off(rng), off(rng)};
        if (std::abs(o[0] - o[1]) > 0.1 && std::abs(o[0] - o[2]) > 0.1 &&
            std::abs(o[1] - o[2]) > 0.1)
            return o;
    }
}

} // namespace

Built random_feasible_kind(int kind, Rng& rng) {
    std::uniform_real_distribution<double> radius(0.6, 2.5);
    std::uniform_real_distribution<double> pos(-1.5, 1.5);
    const double R = radius(rng);
    const auto phis = random_headings(rng);
    if (kind == 0) return concurrent_planar(R, phis, vec2(pos(rng), pos(rng)));
    return lifted_axis(kind == 1 ? 3 : 4, R, phis, random_offsets(rng), rng);
}

Built random_feasible(Rng& rng) {
    return random_feasible_kind(static_cast<int>(rng() % 3), rng);
}

TriangleSpec random_triangle(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> len(lo, hi);
    for (;;) {
        const double a = len(rng), b = len(rng), c = len(rng);
        const double m = std::max({a, b, c});
        if (a + b + c - 2.0 * m > 0.05) return TriangleSpec(a, b, c);
    }
}

Scene random_generic_r3(Rng& rng) {
    std::uniform_real_distribution<double> pos(-1.5, 1.5);
    std::normal_distribution<double> nd;
    for (;;) {
        std::array<Line, 3> lines;
        for (auto& l : lines) {
            Vec a(3), d(3);
            do {
                for (int i = 0; i < 3; ++i) {
                    a[i] = pos(rng);
                    d[i] = nd(rng);
                }
            } while (d.norm() < 0.2);
            l = Line(a, d);
        }
        bool ok = true;
        for (int i = 0; ok && i < 3; ++i)
            for (int j = i + 1; ok && j < 3; ++j)
                if (std::abs(lines[static_cast<size_t>(i)].direction.dot(
                        lines[static_cast<size_t>(j)].direction)) > 0.9)
                    ok = false;
        if (!ok) continue;
        Scene s = make_scene(lines[0], lines[1], lines[2]);
        if (s.cls.tag == SceneTag::Generic) return s;
    }
}

double brute_pair_distance(const Line& li, const Line& lj, int grid) {
    // expand |(a_i + s u) - (a_j + t v)|^2 into scalars so the scan is cheap
    const Vec delta = lj.anchor - li.anchor;
    const double dd = delta.squaredNorm();
    const double du = delta.dot(li.direction);
    const double dv = delta.dot(lj.direction);
    const double c = li.direction.dot(lj.direction);
    auto f = [&](double s, double t) {
        return dd + s * s + t * t - 2.0 * s * t * c - 2.0 * s * du + 2.0 * t * dv;
    };
    const double L = std::sqrt(dd) + 5.0;
    double best = f(0.0, 0.0), bs = 0.0, bt = 0.0;
    for (int a = 0; a < grid; ++a) {
        const double s = -L + 2.0 * L * a / (grid - 1);
        for (int b = 0; b < grid; ++b) {
            const double t = -L + 2.0 * L * b / (grid - 1);
            const double v = f(s, t);
            if (v < best) {
                best = v;
                bs = s;
                bt = t;
            }
        }
    }
    // alternating exact line minimization from the grid winner
    for (int k = 0; k < 400; ++k) {
        bs = du + bt * c;  // d f / d s = 0
        bt = -dv + bs * c; // d f / d t = 0
    }
    return std::sqrt(std::max(0.0, f(bs, bt)));
}

Extent polished_extent(const Scene& scene, const TriangleSpec& tri, int side, int vertex,
                       int grid) {
    const auto states = trace(scene, tri, side, grid);
    const Line& line = scene.lines[static_cast<size_t>(vertex)];
    auto coord_at = [&](double theta) {
        const MotionState st = motion_state(theta, scene, tri, side);
        const Vec& p = vertex == 0 ? st.p1 : vertex == 1 ? st.p2 : st.p3;
        return line.coord_of(p);
    };
    int k_lo = 0, k_hi = 0;
    double v_lo = 0.0, v_hi = 0.0;
    for (int k = 0; k < grid; ++k) {
        const MotionState& st = states[static_cast<size_t>(k)];
        const Vec& p = vertex == 0 ? st.p1 : vertex == 1 ? st.p2 : st.p3;
        const double v = line.coord_of(p);
        if (k == 0 || v < v_lo) {
            v_lo = v;
            k_lo = k;
        }
        if (k == 0 || v > v_hi) {
            v_hi = v;
            k_hi = k;
        }
    }
    const double h = 2.0 * 3.141592653589793 / grid;
    const double t_lo =
        golden_min([&](double th) { return coord_at(th); }, (k_lo - 1) * h, (k_lo + 1) * h);
    const double t_hi =
        golden_min([&](double th) { return -coord_at(th); }, (k_hi - 1) * h, (k_hi + 1) * h);
    return Extent{coord_at(t_lo), coord_at(t_hi)};
}

std::string temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("trilinea_tests_" + std::to_string(static_cast<long>(getpid())));
        fs::create_directories(p);
        return p;
    }();
    return dir.string();
}

std::string write_temp(const std::string& name, const std::string& contents) {
    const fs::path p = fs::path(temp_dir()) / name;
    std::ofstream f(p);
    f << contents;
    f.close();
    return p.string();
}

} // namespace trilinea::testsup
