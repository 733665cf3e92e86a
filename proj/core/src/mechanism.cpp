#include "trilinea/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace trilinea {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::pair<int, int> pair_vertices(int k) {
    switch (k) {
        case 0: return {0, 1};
        case 1: return {0, 2};
        default: return {1, 2};
    }
}

} // namespace

TriangleSpec::TriangleSpec(double a12, double a13, double a23, bool allow_degenerate)
    : d12(a12), d13(a13), d23(a23) {
    for (double d : {d12, d13, d23})
        if (!(d > 0.0) || !std::isfinite(d))
            throw DegenerateTriangle("edge lengths must be positive and finite");
    const double margin = 1e-12 * scale();
    const double slack =
        std::min({d13 + d23 - d12, d12 + d23 - d13, d12 + d13 - d23});
    if (slack <= margin) {
        if (!allow_degenerate)
            throw DegenerateTriangle("edge lengths violate the strict triangle inequality");
        degenerate = true;
    }
}

double TriangleSpec::edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return d12;
    if (i == 0 && j == 2) return d13;
    if (i == 1 && j == 2) return d23;
    throw ValidationError("triangle edge indices out of range");
}

int Scene::pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return 0;
    if (i == 0 && j == 2) return 1;
    if (i == 1 && j == 2) return 2;
    throw ValidationError("pair indices out of range");
}

const PairGeometry& Scene::pair(int i, int j) const {
    const auto& p = pairs[pair_index(i, j)];
    if (!p)
        throw ParallelLines("pair geometry undefined: lines are parallel");
    return *p;
}

Scene make_scene(const Line& l1, const Line& l2, const Line& l3) {
    Scene s;
    s.lines = {l1, l2, l3};
    s.cls = classify_scene(l1, l2, l3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(s.lines[i].direction.dot(s.lines[j].direction)) < kParallelCos)
                s.pairs[Scene::pair_index(i, j)] = common_perpendicular(s.lines[i], s.lines[j]);
    return s;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::FeasibleMechanism: return "FeasibleMechanism";
        case Verdict::FeasibleParallel: return "FeasibleParallel";
        case Verdict::Infeasible: return "Infeasible";
    }
    return "?";
}

PlanarFrame scene_frame(const Scene& scene) {
    PlanarFrame fr;
    if (scene.dim() == 2) {
        fr.origin = scene.cls.meet ? *scene.cls.meet : Vec(Vec::Zero(2));
        fr.ex = vec2(1.0, 0.0);
        fr.ey = vec2(0.0, 1.0);
        return fr;
    }
    if (scene.cls.tag == SceneTag::ConcurrentPlanar)
        fr.origin = *scene.cls.meet;
    else if (scene.cls.tag == SceneTag::CommonPerpendicularAxis)
        fr.origin = scene.cls.axis->anchor;
    else
        throw NotPlanarizable("no canonical plane for this scene class");
    fr.ex = scene.lines[0].direction;
    Vec ey = scene.lines[1].direction - scene.lines[1].direction.dot(fr.ex) * fr.ex;
    const double n = ey.norm();
    if (n <= 1e-9)
        throw DegenerateScene("first two line directions are parallel");
    fr.ey = ey / n;
    return fr;
}

// ---------------------------------------------------------------------------
// third vertex carries
// ---------------------------------------------------------------------------

namespace {

double cross_in_frame(const PlanarFrame& fr, const Vec& p1, const Vec& p2, const Vec& p3) {
    const double ax = fr.u(p1), ay = fr.v(p1);
    const double bx = fr.u(p2), by = fr.v(p2);
    const double cx = fr.u(p3), cy = fr.v(p3);
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

// on-line points at distance d13 from p1 and d23 from p2 (within tol_len)
std::vector<Vec> third_vertex_candidates(const Vec& p1, const Vec& p2, const TriangleSpec& tri,
                                         const Line& l3, double tol_len) {
    const Vec w1 = p1 - l3.anchor;
    const double b = l3.direction.dot(w1);
    const double c = w1.squaredNorm() - tri.d13 * tri.d13;
    const double disc = b * b - c;
    std::vector<double> roots;
    if (disc >= 0.0) {
        // stable quadratic roots: t^2 - 2 b t + c = 0
        const double r = std::sqrt(disc);
        const double t1 = b >= 0.0 ? b + r : b - r;
        roots.push_back(t1);
        if (std::abs(t1) > 0.0 && r > 0.0) roots.push_back(c / t1);
    } else if (disc > -tol_len * tol_len) {
        roots.push_back(b); // grazing tangency within tolerance
    }
    std::vector<Vec> ok;
    for (double t : roots) {
        Vec p = l3.point_at(t);
        if (std::abs((p - p2).norm() - tri.d23) <= tol_len) ok.push_back(std::move(p));
    }
    return ok;
}

} // namespace

Vec carry_third_vertex(const Vec& p1, const Vec& p2, const TriangleSpec& tri,
                       const PlanarFrame& frame, int side) {
    if (side != 1 && side != -1)
        throw ValidationError("side must be +1 or -1");
    const double s = tri.scale();
    const double u1 = frame.u(p1), v1 = frame.v(p1);
    const double u2 = frame.u(p2), v2 = frame.v(p2);
    const double dx = u2 - u1, dy = v2 - v1;
    const double len = std::hypot(dx, dy);
    if (len <= 1e-12 * s)
        throw NoThirdVertex("base vertices coincide; the third vertex has no bearing");
    const double ex = dx / len, ey = dy / len;
    const double x = (len * len + tri.d13 * tri.d13 - tri.d23 * tri.d23) / (2.0 * len);
    const double y2 = tri.d13 * tri.d13 - x * x;
    if (y2 < -1e-9 * s * s)
        throw NoThirdVertex("triangle cannot close over the current base length");
    const double y = side * std::sqrt(std::max(0.0, y2));
    const double u3 = u1 + x * ex - y * ey;
    const double v3 = v1 + x * ey + y * ex;
    return frame.origin + u3 * frame.ex + v3 * frame.ey;
}

Vec carry_third_vertex(const Vec& p1, const Vec& p2, const TriangleSpec& tri,
                       const Line& l3, const PlanarFrame& frame, int side) {
    if (side != 1 && side != -1)
        throw ValidationError("side must be +1 or -1");
    const double s = tri.scale();
    const auto cands = third_vertex_candidates(p1, p2, tri, l3, 1e-6 * s);
    if (cands.empty())
        throw NoThirdVertex("rigid-carry locus misses the third line");
    std::vector<const Vec*> matched;
    for (const Vec& p : cands) {
        const double cr = cross_in_frame(frame, p1, p2, p);
        // near-zero orientation (tangency) matches either side
        if (std::abs(cr) <= 1e-9 * s * s || (cr > 0.0 ? 1 : -1) == side)
            matched.push_back(&p);
    }
    if (matched.empty())
        throw NoThirdVertex("on-line third vertex exists only with the opposite orientation");
    if (matched.size() > 1) {
        if ((*matched[0] - *matched[1]).norm() <= 1e-6 * s) return *matched[0];
        throw AmbiguousSide("two on-line candidates match the requested side");
    }
    return *matched[0];
}

// ---------------------------------------------------------------------------
// motion
// ---------------------------------------------------------------------------

namespace {

struct MechCore {
    EllipseParams ell;
    PlanarFrame frame;
    bool planar2d = false;
};

MechCore mech_core(const Scene& scene, const TriangleSpec& tri) {
    MechCore mc;
    mc.ell = ellipse_params(tri.d12, scene.pair(0, 1));
    mc.frame = scene_frame(scene);
    mc.planar2d = scene.dim() == 2;
    return mc;
}

void fill_foot_coordinates(const Scene& scene, MotionState& st) {
    const PairGeometry& g12 = scene.pair(0, 1);
    const PairGeometry& g13 = scene.pair(0, 2);
    const PairGeometry& g23 = scene.pair(1, 2);
    st.t[0] = scene.lines[0].direction.dot(st.p1 - g12.q_i); // t_12
    st.t[1] = scene.lines[1].direction.dot(st.p2 - g12.q_j); // t_21
    st.t[2] = scene.lines[0].direction.dot(st.p1 - g13.q_i); // t_13
    st.t[3] = scene.lines[2].direction.dot(st.p3 - g13.q_j); // t_31
    st.t[4] = scene.lines[1].direction.dot(st.p2 - g23.q_i); // t_23
    st.t[5] = scene.lines[2].direction.dot(st.p3 - g23.q_j); // t_32
}

MotionState state_at(const Scene& scene, const TriangleSpec& tri, int side, double theta,
                     const MechCore& mc, const Vec* prev_p3) {
    const PairGeometry& g12 = scene.pair(0, 1);
    const auto [t12, t21] = segment_position(theta, mc.ell);
    MotionState st;
    st.theta = theta;
    st.p1 = g12.q_i + t12 * scene.lines[0].direction;
    st.p2 = g12.q_j + t21 * scene.lines[1].direction;
    const double tol = 1e-6 * tri.scale();
    if (mc.planar2d) {
        st.p3 = carry_third_vertex(st.p1, st.p2, tri, mc.frame, side);
        if (scene.lines[2].distance_to(st.p3) > tol)
            throw NoThirdVertex("carried vertex leaves the third line; try the opposite side");
    } else {
        try {
            st.p3 = carry_third_vertex(st.p1, st.p2, tri, scene.lines[2], mc.frame, side);
        } catch (const AmbiguousSide&) {
            const auto cands = third_vertex_candidates(st.p1, st.p2, tri, scene.lines[2], tol);
            if (cands.empty()) throw;
            if (prev_p3) {
                st.p3 = *std::min_element(cands.begin(), cands.end(),
                                          [&](const Vec& a, const Vec& b) {
                                              return (a - *prev_p3).norm() < (b - *prev_p3).norm();
                                          });
            } else {
                st.p3 = *std::max_element(cands.begin(), cands.end(),
                                          [&](const Vec& a, const Vec& b) {
                                              return side * cross_in_frame(mc.frame, st.p1, st.p2, a) <
                                                     side * cross_in_frame(mc.frame, st.p1, st.p2, b);
                                          });
            }
        }
    }
    fill_foot_coordinates(scene, st);
    return st;
}

double state_residual(const Scene& scene, const TriangleSpec& tri, const MotionState& st) {
    double r = 0.0;
    const std::array<const Vec*, 3> p{&st.p1, &st.p2, &st.p3};
    for (int k = 0; k < 3; ++k) {
        const auto [i, j] = pair_vertices(k);
        r = std::max(r, std::abs((*p[i] - *p[j]).norm() - tri.edge(i, j)));
    }
    for (int i = 0; i < 3; ++i)
        r = std::max(r, scene.lines[i].distance_to(*p[i]));
    return r;
}

bool motion_validates(const Scene& scene, const TriangleSpec& tri, int side, const MechCore& mc) {
    constexpr int kSamples = 32;
    const double tol = 1e-8 * tri.scale();
    for (int k = 0; k < kSamples; ++k) {
        const double theta = kTau * k / kSamples + 0.1357;
        try {
            const MotionState st = state_at(scene, tri, side, theta, mc, nullptr);
            if (state_residual(scene, tri, st) > tol) return false;
        } catch (const AmbiguousSide&) {
            continue; // isolated tangency; neighbors decide
        } catch (const NoThirdVertex&) {
            return false;
        }
    }
    return true;
}

// static embed of the triangle on three parallel lines: per-pair axial
// separations tau_ij = +-sqrt(d_ij^2 - w_ij^2) must close up,
// tau_12 + tau_23 = tau_13
struct ParallelEmbed {
    bool reachable = true; // every d_ij >= perpendicular line separation
    double best_gap = std::numeric_limits<double>::infinity();
    std::array<double, 3> tau{}; // best sign assignment, pair order 12 13 23
    std::string why;
};

ParallelEmbed parallel_embed(const Scene& scene, const TriangleSpec& tri) {
    ParallelEmbed pe;
    const Vec& v = scene.lines[0].direction;
    std::array<double, 3> r{};
    for (int k = 0; k < 3; ++k) {
        const auto [i, j] = pair_vertices(k);
        const Vec dadj = scene.lines[i].anchor - scene.lines[j].anchor;
        const double axial = dadj.dot(v);
        const double w = (dadj - axial * v).norm();
        const double d = tri.edge(i, j);
        if (d - w <= 1e-12 * tri.scale() && std::abs(d - w) > 1e-8 * tri.scale()) {
            if (d < w) {
                pe.reachable = false;
                std::ostringstream os;
                os << "separation of lines " << i + 1 << " and " << j + 1 << " (" << w
                   << ") exceeds the edge length " << d;
                pe.why = os.str();
                return pe;
            }
        }
        r[k] = std::sqrt(std::max(0.0, d * d - w * w));
    }
    for (int s12 : {1, -1})
        for (int s13 : {1, -1})
            for (int s23 : {1, -1}) {
                const double gap = std::abs(s12 * r[0] + s23 * r[2] - s13 * r[1]);
                if (gap < pe.best_gap) {
                    pe.best_gap = gap;
                    pe.tau = {s12 * r[0], s13 * r[1], s23 * r[2]};
                }
            }
    return pe;
}

} // namespace

FeasibilityReport feasibility(const Scene& scene, const TriangleSpec& tri) {
    FeasibilityReport rep;
    rep.scene_class = scene.cls.tag;
    rep.near_parallel_warning = scene.cls.near_parallel_warning;
    const double s = tri.scale();

    if (scene.cls.tag == SceneTag::AllParallel) {
        const ParallelEmbed pe = parallel_embed(scene, tri);
        if (!pe.reachable) {
            rep.reason = pe.why;
            return rep;
        }
        if (pe.best_gap <= 1e-8 * s) {
            rep.verdict = Verdict::FeasibleParallel;
            return rep;
        }
        rep.near_feasible = pe.best_gap <= 1e-5 * s;
        std::ostringstream os;
        os << "triangle does not embed on the parallel lines (closure gap " << pe.best_gap << ")";
        rep.reason = os.str();
        return rep;
    }

    if (scene.cls.tag == SceneTag::Generic) {
        rep.reason = "scene class Generic admits no continuous motion";
        return rep;
    }

    // mechanism branch: ConcurrentPlanar or CommonPerpendicularAxis
    std::array<double, 3> ratios{};
    for (int k = 0; k < 3; ++k) {
        const auto [i, j] = pair_vertices(k);
        const PairGeometry& g = scene.pair(i, j);
        const double d = tri.edge(i, j);
        if (d - g.dist <= 1e-12) {
            std::ostringstream os;
            os << "edge between lines " << i + 1 << " and " << j + 1
               << " is not longer than the line distance (" << d << " vs " << g.dist << ")";
            rep.reason = os.str();
            return rep;
        }
        const double d_eff = std::sqrt(d * d - g.dist * g.dist);
        ratios[k] = d_eff / g.sin_alpha();
    }
    rep.ratios = ratios;

    const double rmax = *std::max_element(ratios.begin(), ratios.end());
    const double rmin = *std::min_element(ratios.begin(), ratios.end());
    const double mean = (ratios[0] + ratios[1] + ratios[2]) / 3.0;
    const double spread = (rmax - rmin) / mean;
    if (spread > 1e-8) {
        rep.near_feasible = spread <= 1e-5;
        std::ostringstream os;
        os << "per-line range ratios disagree (relative spread " << spread << ")";
        rep.reason = os.str();
        return rep;
    }

    const MechCore mc = mech_core(scene, tri);
    for (int side : {1, -1}) {
        if (motion_validates(scene, tri, side, mc)) {
            rep.verdict = Verdict::FeasibleMechanism;
            rep.side = side;
            std::array<RangeInterval, 3> rg;
            const PairGeometry& g12 = scene.pair(0, 1);
            const PairGeometry& g13 = scene.pair(0, 2);
            const EllipseParams e13 = ellipse_params(tri.d13, g13);
            rg[0] = range_interval(mc.ell, g12, 0);
            rg[1] = range_interval(mc.ell, g12, 1);
            rg[2] = range_interval(e13, g13, 1);
            rep.ranges = rg;
            return rep;
        }
    }
    rep.reason = "equal range ratios but no on-line motion (incompatible direction phases)";
    return rep;
}

MotionState motion_state(double theta, const Scene& scene, const TriangleSpec& tri, int side) {
    const FeasibilityReport rep = feasibility(scene, tri);
    if (rep.verdict != Verdict::FeasibleMechanism)
        throw InfeasibleScene("motion requires a feasible mechanism: " + rep.reason);
    return state_at(scene, tri, side, theta, mech_core(scene, tri), nullptr);
}

std::vector<MotionState> trace(const Scene& scene, const TriangleSpec& tri, int side, int n_samples) {
    if (n_samples < 2)
        throw InvalidSampleCount("a trace needs at least 2 samples");
    const FeasibilityReport rep = feasibility(scene, tri);
    if (rep.verdict == Verdict::Infeasible)
        throw InfeasibleScene("no continuous motion: " + rep.reason);

    std::vector<MotionState> out;
    out.reserve(static_cast<size_t>(n_samples));

    if (rep.verdict == Verdict::FeasibleParallel) {
        const ParallelEmbed pe = parallel_embed(scene, tri);
        const Vec& v = scene.lines[0].direction;
        // anchor-frame offsets realizing the embed, line 1 pinned at its anchor
        std::array<double, 3> sigma{};
        const double k12 = (scene.lines[0].anchor - scene.lines[1].anchor).dot(v);
        const double k13 = (scene.lines[0].anchor - scene.lines[2].anchor).dot(v);
        sigma[0] = 0.0;
        sigma[1] = k12 - pe.tau[0];
        sigma[2] = k13 - pe.tau[1];
        const double S = tri.scale();
        for (int k = 0; k < n_samples; ++k) {
            const double t = -S + 2.0 * S * k / (n_samples - 1);
            MotionState st;
            st.theta = t;
            st.p1 = scene.lines[0].anchor + (sigma[0] + t) * v;
            st.p2 = scene.lines[1].anchor + (sigma[1] + t) * v;
            st.p3 = scene.lines[2].anchor + (sigma[2] + t) * v;
            // no feet on parallel lines: record anchor-frame coordinates
            const double c1 = scene.lines[0].coord_of(st.p1);
            const double c2 = scene.lines[1].coord_of(st.p2);
            const double c3 = scene.lines[2].coord_of(st.p3);
            st.t = {c1, c2, c1, c3, c2, c3};
            out.push_back(std::move(st));
        }
        return out;
    }

    const MechCore mc = mech_core(scene, tri);
    const Vec* prev = nullptr;
    for (int k = 0; k < n_samples; ++k) {
        const double theta = kTau * static_cast<double>(k) / n_samples;
        out.push_back(state_at(scene, tri, side, theta, mc, prev));
        prev = &out.back().p3;
    }
    return out;
}

// ---------------------------------------------------------------------------
// circumcircle invariant
// ---------------------------------------------------------------------------

CircumcircleReport circumcircle_check(const std::vector<MotionState>& states, const Scene& scene) {
    if (states.empty())
        throw ValidationError("circumcircle check needs a non-empty trace");
    CircumcircleReport rep;
    if (scene.cls.tag == SceneTag::AllParallel) {
        rep.applicable = false;
        return rep;
    }
    const PlanarFrame fr = scene_frame(scene);
    rep.fixed_center = fr.origin;

    struct Circ {
        double cx, cy, r;
    };
    std::vector<Circ> circ;
    circ.reserve(states.size());
    double scale = 1.0;
    for (const MotionState& st : states) {
        const double ax = fr.u(st.p1), ay = fr.v(st.p1);
        const double bx = fr.u(st.p2), by = fr.v(st.p2);
        const double cx = fr.u(st.p3), cy = fr.v(st.p3);
        scale = std::max({scale, std::abs(ax), std::abs(bx), std::abs(cx)});
        const double den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (std::abs(den) < 1e-14 * scale * scale) {
            // collinear vertices: no circumcircle, maximal deviation
            circ.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
            continue;
        }
        const double a2 = ax * ax + ay * ay;
        const double b2 = bx * bx + by * by;
        const double c2 = cx * cx + cy * cy;
        const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den;
        const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den;
        circ.push_back({ux, uy, std::hypot(ax - ux, ay - uy)});
    }
    double rbar = 0.0;
    int finite = 0;
    for (const Circ& c : circ)
        if (std::isfinite(c.r)) {
            rbar += c.r;
            ++finite;
        }
    rbar = finite > 0 ? rbar / finite : 0.0;
    rep.radius = rbar;
    for (const Circ& c : circ) {
        const double dr = std::isfinite(c.r) ? std::abs(c.r - rbar) : rbar + 1.0;
        const double dc = std::isfinite(c.r) ? std::abs(std::hypot(c.cx, c.cy) - rbar) : rbar + 1.0;
        rep.max_radius_dev = std::max(rep.max_radius_dev, dr);
        rep.max_center_dev = std::max(rep.max_center_dev, dc);
    }
    rep.max_dev = std::max(rep.max_radius_dev, rep.max_center_dev);
    return rep;
}

// ---------------------------------------------------------------------------
// rolling-circle model
// ---------------------------------------------------------------------------

RollingCircleModel rolling_model(const Scene& scene, const TriangleSpec& tri) {
    if (scene.cls.tag != SceneTag::ConcurrentPlanar)
        throw NotPlanarizable("rolling model requires a planar concurrent scene");
    const FeasibilityReport rep = feasibility(scene, tri);
    if (rep.verdict != Verdict::FeasibleMechanism)
        throw InfeasibleScene("rolling model requires a feasible mechanism: " + rep.reason);
    RollingCircleModel m;
    m.frame = scene_frame(scene);
    m.center = *scene.cls.meet;
    const auto& r = *rep.ratios;
    m.R = (r[0] + r[1] + r[2]) / 3.0;
    m.r = m.R / 2.0;
    for (int i = 0; i < 3; ++i)
        m.phases[i] = std::atan2(m.frame.ey.dot(scene.lines[i].direction),
                                 m.frame.ex.dot(scene.lines[i].direction));
    return m;
}

Vec rolling_circle_point(const RollingCircleModel& model, double theta, double phi) {
    const Vec u = std::cos(phi) * model.frame.ex + std::sin(phi) * model.frame.ey;
    return model.center + model.R * std::cos(theta - phi) * u;
}

double rolling_equivalence(const Scene& scene, const TriangleSpec& tri,
                           const RollingCircleModel& model, int n_samples) {
    if (n_samples < 8)
        throw InvalidSampleCount("phase fit needs at least 8 samples");
    const FeasibilityReport rep = feasibility(scene, tri);
    if (rep.verdict != Verdict::FeasibleMechanism || !rep.side)
        throw InfeasibleScene("rolling comparison requires a feasible mechanism: " + rep.reason);
    const int side = *rep.side;
    const MechCore mc = mech_core(scene, tri);

    double best = std::numeric_limits<double>::infinity();
    for (int sense : {1, -1}) {
        // least-squares fit of one phase shift at 8 samples:
        // target  t_ik = R [cos(x) cos(D) - sin(x) sin(D)],  x = sense*theta_k - phi_i
        double m11 = 0, m12 = 0, m22 = 0, r1 = 0, r2 = 0;
        for (int k = 0; k < 8; ++k) {
            const double theta = kTau * k / 8.0;
            const MotionState st = state_at(scene, tri, side, theta, mc, nullptr);
            const std::array<const Vec*, 3> p{&st.p1, &st.p2, &st.p3};
            for (int i = 0; i < 3; ++i) {
                const double phi = model.phases[i];
                const Vec u = std::cos(phi) * model.frame.ex + std::sin(phi) * model.frame.ey;
                const double target = u.dot(*p[i] - model.center);
                const double x = sense * theta - phi;
                const double g1 = model.R * std::cos(x);
                const double g2 = -model.R * std::sin(x);
                m11 += g1 * g1;
                m12 += g1 * g2;
                m22 += g2 * g2;
                r1 += g1 * target;
                r2 += g2 * target;
            }
        }
        const double det = m11 * m22 - m12 * m12;
        if (std::abs(det) < 1e-14) continue;
        const double cd = (r1 * m22 - r2 * m12) / det;
        const double sd = (m11 * r2 - m12 * r1) / det;
        const double shift = std::atan2(sd, cd);

        double worst = 0.0;
        for (int k = 0; k < n_samples; ++k) {
            const double theta = kTau * k / n_samples;
            const MotionState st = state_at(scene, tri, side, theta, mc, nullptr);
            const std::array<const Vec*, 3> p{&st.p1, &st.p2, &st.p3};
            for (int i = 0; i < 3; ++i) {
                const Vec q = rolling_circle_point(model, sense * theta + shift, model.phases[i]);
                worst = std::max(worst, (*p[i] - q).norm());
            }
        }
        best = std::min(best, worst);
    }
    return best;
}

std::pair<std::array<Line, 3>, TriangleSpec>
project_scene(const Scene& scene, const TriangleSpec& tri, const Vec& w) {
    const std::vector<Line> pl =
        project_out({scene.lines[0], scene.lines[1], scene.lines[2]}, w);
    auto adjusted = [&](int i, int j) {
        const double delta = w.dot(scene.lines[i].anchor - scene.lines[j].anchor);
        const double d = tri.edge(i, j);
        const double d2 = d * d - delta * delta;
        if (d2 <= 0.0)
            throw EdgeTooShort("edge length vanishes under the projection");
        return std::sqrt(d2);
    };
    return {{pl[0], pl[1], pl[2]},
            TriangleSpec(adjusted(0, 1), adjusted(0, 2), adjusted(1, 2))};
}

} // namespace trilinea
