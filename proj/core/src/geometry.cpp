#include "trilinea/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace trilinea {

Line::Line(Vec a, Vec d) : anchor(std::move(a)), direction(std::move(d)) {
    if (anchor.size() != direction.size())
        throw ValidationError("line anchor and direction have different dimensions");
    if (anchor.size() < 2)
        throw ValidationError("lines live in dimension >= 2");
    const double n = direction.norm();
    if (n <= 0.0 || !std::isfinite(n))
        throw ValidationError("line direction must be a non-zero finite vector");
    direction /= n;
}

double Line::distance_to(const Vec& p) const {
    const Vec d = p - anchor;
    return (d - direction.dot(d) * direction).norm();
}

PairGeometry common_perpendicular(const Line& li, const Line& lj) {
    if (li.dim() != lj.dim())
        throw ValidationError("lines have different ambient dimensions");
    const Vec& u = li.direction;
    const Vec& v = lj.direction;
    const double c = std::clamp(u.dot(v), -1.0, 1.0);
    if (std::abs(c) >= kParallelCos)
        throw ParallelLines("no unique common perpendicular: directions are parallel");

    // Feet minimize |li(s) - lj(t)|^2; normal equations in (s, t).
    const Vec w0 = li.anchor - lj.anchor;
    const double one_m_c2 = 1.0 - c * c;
    const double wu = w0.dot(u);
    const double wv = w0.dot(v);
    const double s = (-wu + c * wv) / one_m_c2;
    const double t = (-c * wu + wv) / one_m_c2;

    PairGeometry g;
    g.c = c;
    g.alpha = std::acos(c);
    g.t_foot_i = s;
    g.t_foot_j = t;
    g.q_i = li.point_at(s);
    g.q_j = lj.point_at(t);
    g.dist = (g.q_i - g.q_j).norm();
    return g;
}

double foot_offset(const Line& li, const PairGeometry& g_ij, const PairGeometry& g_ik) {
    const double tol = 1e-6 * (1.0 + g_ij.q_i.norm() + g_ik.q_i.norm());
    if (li.distance_to(g_ij.q_i) > tol || li.distance_to(g_ik.q_i) > tol)
        throw ValidationError("foot_offset: both pair geometries must have this line first");
    // chosen so that t_ij = t_ik + e for foot-frame coordinates of any point
    return g_ik.t_foot_i - g_ij.t_foot_i;
}

const char* to_string(SceneTag t) {
    switch (t) {
        case SceneTag::AllParallel: return "AllParallel";
        case SceneTag::ConcurrentPlanar: return "ConcurrentPlanar";
        case SceneTag::CommonPerpendicularAxis: return "CommonPerpendicularAxis";
        case SceneTag::Generic: return "Generic";
    }
    return "?";
}

namespace {

// rank of the 3 x n direction matrix and an orthonormal basis of its row
// space / null space, via SVD
struct DirSpan {
    int rank = 0;
    Eigen::MatrixXd V; // full right singular vectors, n x n
    Eigen::VectorXd sv;
};

DirSpan direction_span(const Line& l1, const Line& l2, const Line& l3) {
    Eigen::MatrixXd m(3, l1.dim());
    m.row(0) = l1.direction.transpose();
    m.row(1) = l2.direction.transpose();
    m.row(2) = l3.direction.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    DirSpan ds;
    ds.V = svd.matrixV();
    ds.sv = svd.singularValues();
    for (int k = 0; k < ds.sv.size(); ++k)
        if (ds.sv[k] > 1e-8) ++ds.rank;
    return ds;
}

} // namespace

SceneClass classify_scene(const Line& l1, const Line& l2, const Line& l3) {
    const std::array<const Line*, 3> ln{&l1, &l2, &l3};
    if (l1.dim() != l2.dim() || l1.dim() != l3.dim())
        throw ValidationError("scene lines have mixed dimensions");

    double scale = 1.0;
    for (const Line* l : ln) scale = std::max(scale, l->anchor.norm());

    // identical lines?
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double c = std::abs(ln[i]->direction.dot(ln[j]->direction));
            if (c >= kParallelCos && ln[i]->distance_to(ln[j]->anchor) <= 1e-9 * scale)
                throw DegenerateScene("two scene lines coincide");
        }

    SceneClass sc;
    std::array<double, 3> cs{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            cs[k++] = std::abs(ln[i]->direction.dot(ln[j]->direction));

    const bool all_par = std::all_of(cs.begin(), cs.end(), [](double c) { return c >= kParallelCos; });
    const bool any_par = std::any_of(cs.begin(), cs.end(), [](double c) { return c >= kParallelCos; });
    sc.near_parallel_warning =
        std::any_of(cs.begin(), cs.end(), [](double c) { return c < kParallelCos && c >= kNearParallelCos; });

    if (all_par) {
        sc.tag = SceneTag::AllParallel;
        return sc;
    }
    if (any_par) {
        // two parallel lines plus a transversal admit neither a meet nor an
        // axis through common-perpendicular feet
        sc.tag = SceneTag::Generic;
        return sc;
    }

    const PairGeometry g12 = common_perpendicular(l1, l2);
    const PairGeometry g13 = common_perpendicular(l1, l3);
    const PairGeometry g23 = common_perpendicular(l2, l3);
    const std::array<const PairGeometry*, 3> gs{&g12, &g13, &g23};
    for (const PairGeometry* g : gs)
        scale = std::max({scale, g->q_i.norm(), g->q_j.norm()});
    const double tol = 1e-8 * scale;

    // all pairs intersecting at one common point?
    const bool all_meet = std::all_of(gs.begin(), gs.end(), [&](const PairGeometry* g) { return g->dist <= tol; });
    if (all_meet) {
        Vec meet = Vec::Zero(l1.dim());
        for (const PairGeometry* g : gs) meet += g->q_i + g->q_j;
        meet /= 6.0;
        bool concurrent = true;
        for (const PairGeometry* g : gs)
            concurrent = concurrent && (g->q_i - meet).norm() <= tol && (g->q_j - meet).norm() <= tol;
        if (concurrent) {
            const DirSpan ds = direction_span(l1, l2, l3);
            if (ds.rank <= 2) {
                sc.tag = SceneTag::ConcurrentPlanar;
                sc.meet = meet;
                return sc;
            }
            if (ds.rank < l1.dim()) {
                // concurrent, non-planar, with room for a perpendicular axis
                sc.tag = SceneTag::CommonPerpendicularAxis;
                sc.axis = Line(meet, ds.V.col(l1.dim() - 1));
                return sc;
            }
            sc.tag = SceneTag::Generic;
            return sc;
        }
        sc.tag = SceneTag::Generic; // coplanar triangle of lines, or similar
        return sc;
    }

    // axis candidate: the longest foot-connecting segment
    const PairGeometry* longest = *std::max_element(
        gs.begin(), gs.end(), [](const PairGeometry* a, const PairGeometry* b) { return a->dist < b->dist; });
    Line axis(longest->q_i, longest->q_j - longest->q_i);
    bool ok = true;
    for (const PairGeometry* g : gs)
        ok = ok && axis.distance_to(g->q_i) <= tol && axis.distance_to(g->q_j) <= tol;
    for (const Line* l : ln)
        ok = ok && std::abs(axis.direction.dot(l->direction)) <= 1e-10;
    if (ok) {
        sc.tag = SceneTag::CommonPerpendicularAxis;
        sc.axis = axis;
        return sc;
    }

    sc.tag = SceneTag::Generic;
    return sc;
}

std::vector<Line> project_out(const std::vector<Line>& lines, const Vec& w) {
    if (std::abs(w.norm() - 1.0) > 1e-9)
        throw ValidationError("projection vector must be unit length");
    for (const Line& l : lines) {
        if (l.dim() != w.size())
            throw ValidationError("projection vector dimension mismatch");
        if (std::abs(l.direction.dot(w)) > 1e-10)
            throw NotPerpendicular("line direction not orthogonal to the projection vector");
    }
    std::vector<Line> out;
    out.reserve(lines.size());
    for (const Line& l : lines) {
        const Vec a = l.anchor - w.dot(l.anchor) * w;
        const Vec d = l.direction - w.dot(l.direction) * w;
        out.emplace_back(a, d);
    }
    return out;
}

} // namespace trilinea
