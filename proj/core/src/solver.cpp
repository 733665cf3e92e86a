#include "trilinea/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace trilinea {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949; // (sqrt(5)-1)/2

std::pair<int, int> pair_vertices(int k) {
    switch (k) {
        case 0: return {0, 1};
        case 1: return {0, 2};
        default: return {1, 2};
    }
}

// coefficients of the monic quadratic in t_k coming from edge (m, k):
// |l_m(t_m) - l_k(t_k)|^2 = d^2  ==>  t_k^2 + beta(t_m) t_k + gamma(t_m) = 0
struct EdgeQuadric {
    double bl = 0, bc = 0; // beta  = bl*t_m + bc
    double cl = 0, cc = 0; // gamma = t_m^2 + cl*t_m + cc
    double beta(double tm) const { return bl * tm + bc; }
    double gamma(double tm) const { return tm * tm + cl * tm + cc; }
};

EdgeQuadric edge_quadric(const Line& lm, const Line& lk, double d) {
    const Vec da = lm.anchor - lk.anchor;
    EdgeQuadric q;
    q.bl = -2.0 * lm.direction.dot(lk.direction);
    q.bc = -2.0 * lk.direction.dot(da);
    q.cl = 2.0 * lm.direction.dot(da);
    q.cc = da.squaredNorm() - d * d;
    return q;
}

struct BaseParam {
    int i = 0, j = 1, k = 2; // angle runs on pair (i, j); t_k is eliminated
    double a = 0, b = 0;     // half-axes of the base-pair solution ellipse
    double fi = 0, fj = 0;   // anchor coordinates of the perpendicular feet
    bool empty = false;      // base edge cannot span the two lines at all
    bool point = false;      // base edge exactly touches: a single position
};

struct SliceEval {
    double ti = 0, tj = 0;
    double beta1 = 0, gamma1 = 0; // quadratic from edge (i, k)
    double beta2 = 0, gamma2 = 0; // quadratic from edge (j, k)
    double A = 0, B = 0;
    double g = 0; // cleared-denominator residual; zero exactly at placements
};

struct Engine {
    const Scene* scene = nullptr;
    const TriangleSpec* tri = nullptr;
    BaseParam base;
    EdgeQuadric qik, qjk;
    double S = 1.0;

    SliceEval eval(double theta) const {
        const double ct = std::cos(theta), st = std::sin(theta);
        SliceEval s;
        s.ti = base.fi + base.a * ct - base.b * st;
        s.tj = base.fj + base.a * ct + base.b * st;
        s.beta1 = qik.beta(s.ti);
        s.gamma1 = qik.gamma(s.ti);
        s.beta2 = qjk.beta(s.tj);
        s.gamma2 = qjk.gamma(s.tj);
        s.A = s.beta1 - s.beta2;
        s.B = s.gamma1 - s.gamma2;
        s.g = s.B * s.B - s.beta1 * s.A * s.B + s.gamma1 * s.A * s.A;
        return s;
    }
};

// best common-root defect of the two quadratics; infinity when neither has
// real roots
double slice_consistency(const SliceEval& s) {
    double best = std::numeric_limits<double>::infinity();
    const std::array<std::pair<double, double>, 2> qs{
        std::pair{s.beta1, s.gamma1}, std::pair{s.beta2, s.gamma2}};
    for (const auto& [beta, gamma] : qs) {
        const double disc = 0.25 * beta * beta - gamma;
        if (disc < 0.0) continue;
        const double r = std::sqrt(disc);
        for (double x : {-0.5 * beta - r, -0.5 * beta + r}) {
            const double v1 = std::abs(x * x + s.beta1 * x + s.gamma1);
            const double v2 = std::abs(x * x + s.beta2 * x + s.gamma2);
            best = std::min(best, std::max(v1, v2));
        }
    }
    return best;
}

Engine make_engine(const Scene& scene, const TriangleSpec& tri, int force_i, int force_j) {
    Engine eng;
    eng.scene = &scene;
    eng.tri = &tri;
    eng.S = tri.scale();

    int bi = -1, bj = -1;
    if (force_i >= 0) {
        bi = force_i;
        bj = force_j;
        if (std::abs(scene.lines[bi].direction.dot(scene.lines[bj].direction)) >= kParallelCos)
            throw ParallelLines("base pair is parallel; it cannot carry the parametrization");
    } else {
        double best = 2.0;
        for (int k = 0; k < 3; ++k) {
            const auto [i, j] = pair_vertices(k);
            const double c = std::abs(scene.lines[i].direction.dot(scene.lines[j].direction));
            if (c < kParallelCos && c < best) {
                best = c;
                bi = i;
                bj = j;
            }
        }
        if (bi < 0)
            throw ParallelLines("all line pairs are parallel; no base pair available");
    }
    eng.base.i = bi;
    eng.base.j = bj;
    eng.base.k = 3 - bi - bj;

    const PairGeometry g = common_perpendicular(scene.lines[bi], scene.lines[bj]);
    eng.base.fi = g.t_foot_i;
    eng.base.fj = g.t_foot_j;
    const double d = tri.edge(bi, bj);
    const double diff = d - g.dist;
    if (diff <= 0.0) {
        if (diff < -1e-12 * eng.S)
            eng.base.empty = true;
        else
            eng.base.point = true; // exact touch: the ellipse collapses to the feet
    } else {
        const double d_eff = std::sqrt(d * d - g.dist * g.dist);
        eng.base.a = d_eff / std::sqrt(2.0 * (1.0 - g.c));
        eng.base.b = d_eff / std::sqrt(2.0 * (1.0 + g.c));
    }

    eng.qik = edge_quadric(scene.lines[bi], scene.lines[eng.base.k], tri.edge(bi, eng.base.k));
    eng.qjk = edge_quadric(scene.lines[bj], scene.lines[eng.base.k], tri.edge(bj, eng.base.k));
    return eng;
}

void emit_configs(const Engine& eng, double theta, bool near_tangent, double accept_len,
                  std::vector<Configuration>& out) {
    const SliceEval s = eng.eval(theta);
    std::vector<double> cands;
    if (std::abs(s.A) > 1e-9 * eng.S) {
        cands.push_back(-s.B / s.A);
    } else {
        // both quadratics carry the same linear relation: expand their roots
        for (const auto& [beta, gamma] :
             {std::pair{s.beta1, s.gamma1}, std::pair{s.beta2, s.gamma2}}) {
            const double disc = 0.25 * beta * beta - gamma;
            if (disc < 0.0) continue;
            const double r = std::sqrt(disc);
            cands.push_back(-0.5 * beta - r);
            cands.push_back(-0.5 * beta + r);
        }
    }
    const Scene& sc = *eng.scene;
    for (double tk : cands) {
        Configuration c;
        c.theta = theta;
        c.t[eng.base.i] = s.ti;
        c.t[eng.base.j] = s.tj;
        c.t[eng.base.k] = tk;
        c.p1 = sc.lines[0].point_at(c.t[0]);
        c.p2 = sc.lines[1].point_at(c.t[1]);
        c.p3 = sc.lines[2].point_at(c.t[2]);
        const std::array<const Vec*, 3> p{&c.p1, &c.p2, &c.p3};
        double res = 0.0;
        for (int e = 0; e < 3; ++e) {
            const auto [u, v] = pair_vertices(e);
            res = std::max(res, std::abs((*p[u] - *p[v]).norm() - eng.tri->edge(u, v)));
        }
        c.residual = res;
        c.near_tangent = near_tangent;
        if (res <= accept_len) out.push_back(std::move(c));
    }
}

double bisect_root(const Engine& eng, double ta, double tb, int iters) {
    double ga = eng.eval(ta).g;
    for (int it = 0; it < iters; ++it) {
        const double tc = 0.5 * (ta + tb);
        const double gc = eng.eval(tc).g;
        if ((ga < 0.0) == (gc < 0.0)) {
            ta = tc;
            ga = gc;
        } else {
            tb = tc;
        }
    }
    return 0.5 * (ta + tb);
}

// Minimizes sign * g over [ta, tb]; sign = -1 turns it into a maximizer for
// tangencies approached from below.
double golden_min(const Engine& eng, double ta, double tb, int iters, double sign = 1.0) {
    double c = tb - kGolden * (tb - ta);
    double d = ta + kGolden * (tb - ta);
    double gc = sign * eng.eval(c).g;
    double gd = sign * eng.eval(d).g;
    for (int it = 0; it < iters; ++it) {
        if (gc < gd) {
            tb = d;
            d = c;
            gd = gc;
            c = tb - kGolden * (tb - ta);
            gc = sign * eng.eval(c).g;
        } else {
            ta = c;
            c = d;
            gc = gd;
            d = ta + kGolden * (tb - ta);
            gd = sign * eng.eval(d).g;
        }
    }
    return gc < gd ? c : d;
}

void dedup_and_sort(std::vector<Configuration>& configs, double radius) {
    std::sort(configs.begin(), configs.end(), [](const Configuration& x, const Configuration& y) {
        if (x.theta != y.theta) return x.theta < y.theta;
        return x.t[2] < y.t[2];
    });
    std::vector<Configuration> kept;
    for (auto& c : configs) {
        bool merged = false;
        for (auto& k : kept) {
            const double gap = std::max({std::abs(c.t[0] - k.t[0]), std::abs(c.t[1] - k.t[1]),
                                         std::abs(c.t[2] - k.t[2])});
            if (gap <= radius) {
                if (c.residual < k.residual) k = c;
                merged = true;
                break;
            }
        }
        if (!merged) kept.push_back(std::move(c));
    }
    configs = std::move(kept);
    std::sort(configs.begin(), configs.end(), [](const Configuration& x, const Configuration& y) {
        if (x.theta != y.theta) return x.theta < y.theta;
        return x.t[2] < y.t[2];
    });
}

} // namespace

const char* to_string(SolutionKind k) {
    return k == SolutionKind::Finite ? "Finite" : "Continuum";
}

EliminationSlice eliminate_t3(double theta, const Scene& scene, const TriangleSpec& tri) {
    const Engine eng = make_engine(scene, tri, 0, 1);
    if (eng.base.empty)
        throw EdgeTooShort("edge 1-2 is shorter than the distance between lines 1 and 2");
    const SliceEval s = eng.eval(theta);
    EliminationSlice out;
    out.theta = theta;
    out.t1 = s.ti;
    out.t2 = s.tj;
    out.A = s.A;
    out.B = s.B;
    if (std::abs(s.A) > 1e-12 * eng.S) out.t3 = -s.B / s.A;
    out.consistency = slice_consistency(s);
    out.degenerate = out.consistency <= 1e-8 * eng.S * eng.S;
    return out;
}

ConfigurationSet solve_configurations(const Scene& scene, const TriangleSpec& tri,
                                      const SolveOptions& opts) {
    if (opts.grid_size < 16)
        throw ValidationError("solver grid too small");
    if (opts.refine_iters < 1 || opts.tolerance <= 0.0 || opts.dedup_radius <= 0.0)
        throw ValidationError("invalid solver options");

    ConfigurationSet out;
    const double S = tri.scale();
    const FeasibilityReport rep = feasibility(scene, tri);

    if (scene.cls.tag == SceneTag::AllParallel) {
        if (rep.verdict == Verdict::FeasibleParallel) {
            out.kind = SolutionKind::Continuum;
            out.degenerate_fraction = 1.0;
            out.witness = trace(scene, tri, 1, 256);
        }
        return out;
    }

    const Engine eng = make_engine(scene, tri, -1, -1);
    const double accept_len = opts.tolerance * S;

    if (eng.base.empty)
        return out;
    if (eng.base.point) {
        emit_configs(eng, 0.0, true, accept_len, out.configurations);
        dedup_and_sort(out.configurations, opts.dedup_radius * S);
        return out;
    }

    const int N = opts.grid_size;
    const double dtheta = kTau / N;
    std::vector<double> gv(static_cast<size_t>(N) + 1);
    int degen = 0;
    const double cons_tol = 1e-8 * S * S;
    for (int m = 0; m < N; ++m) {
        const SliceEval s = eng.eval(m * dtheta);
        gv[static_cast<size_t>(m)] = s.g;
        if (slice_consistency(s) <= cons_tol) ++degen;
    }
    gv[static_cast<size_t>(N)] = gv[0];
    out.degenerate_fraction = static_cast<double>(degen) / N;

    const bool mech = rep.verdict == Verdict::FeasibleMechanism;
    if (out.degenerate_fraction > 0.5) {
        if (!mech)
            throw InternalInconsistency(
                "elimination admits the triangle almost everywhere, yet the feasibility "
                "criterion rejects the motion");
        out.kind = SolutionKind::Continuum;
        out.witness = trace(scene, tri, rep.side.value_or(1), 256);
        return out;
    }
    if (mech)
        throw InternalInconsistency(
            "feasibility accepts a continuous motion, yet the elimination only admits "
            "isolated placements");

    // sign-change brackets
    for (int m = 0; m < N; ++m) {
        const double g0 = gv[static_cast<size_t>(m)];
        const double g1 = gv[static_cast<size_t>(m) + 1];
        const double th = m * dtheta;
        if (g0 == 0.0) {
            emit_configs(eng, th, false, accept_len, out.configurations);
        } else if (g0 * g1 < 0.0) {
            const double root = bisect_root(eng, th, th + dtheta, opts.refine_iters);
            emit_configs(eng, root, false, accept_len, out.configurations);
        }
    }

    // grazing double roots touch zero without a sign change; refine
    // qualifying local extrema of either sign and let the residual test decide
    double gmax = 0.0;
    for (int m = 0; m < N; ++m) gmax = std::max(gmax, std::abs(gv[static_cast<size_t>(m)]));
    const double S4 = S * S * S * S;
    const double gate = std::max(1e-2 * S4, 1e-6 * gmax);
    for (int m = 0; m < N; ++m) {
        const double gp = gv[static_cast<size_t>((m + N - 1) % N)];
        const double g0 = gv[static_cast<size_t>(m)];
        const double gn = gv[static_cast<size_t>(m) + 1];
        const double th = m * dtheta;
        if (g0 > 0.0 && g0 <= gp && g0 <= gn && g0 <= gate) {
            const double root = golden_min(eng, th - dtheta, th + dtheta, opts.refine_iters + 20);
            emit_configs(eng, root, true, accept_len, out.configurations);
        } else if (g0 < 0.0 && g0 >= gp && g0 >= gn && -g0 <= gate) {
            const double root =
                golden_min(eng, th - dtheta, th + dtheta, opts.refine_iters + 20, -1.0);
            emit_configs(eng, root, true, accept_len, out.configurations);
        }
    }

    dedup_and_sort(out.configurations, opts.dedup_radius * S);
    if (out.count() > 8)
        throw InternalInconsistency("more isolated placements than the degree bound allows");
    return out;
}

// ---------------------------------------------------------------------------
// independent sweep oracle
// ---------------------------------------------------------------------------

namespace {

// distance of line point z(u) = anchor + u*v to the carry sphere, squared;
// the sphere has center O, radius rho, and lives in the hyperplane through O
// orthogonal to e
struct SphereLineDist {
    double A1, A2; // xi(u) = A2 + A1*u      (offset along e)
    double B1, B2; // |z-O|^2 = u^2 + 2*B1*u + B2
    double rho;

    double operator()(double u) const {
        const double xi = A2 + A1 * u;
        const double r2 = std::max(0.0, u * u + 2.0 * B1 * u + B2 - xi * xi);
        const double dr = std::sqrt(r2) - rho;
        return xi * xi + dr * dr;
    }
};

double golden_min_fn(const SphereLineDist& f, double a, double b, int iters, double* arg) {
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    if (arg) *arg = fc < fd ? c : d;
    return std::min(fc, fd);
}

} // namespace

OracleResult oracle_sweep(const Scene& scene, const TriangleSpec& tri, const OracleOptions& opts) {
    if (opts.n_samples < 100000)
        throw InvalidSampleCount("oracle sweep needs at least 100000 samples");
    if (opts.tolerance <= 0.0 || opts.continuum_fraction <= 0.0)
        throw ValidationError("invalid oracle options");

    OracleResult out;
    const double S = tri.scale();

    if (scene.cls.tag == SceneTag::AllParallel) {
        // static embed check, kept local so the oracle stays self-contained
        const Vec& v = scene.lines[0].direction;
        std::array<double, 3> r{};
        for (int k = 0; k < 3; ++k) {
            const auto [i, j] = pair_vertices(k);
            const Vec da = scene.lines[i].anchor - scene.lines[j].anchor;
            const double axial = da.dot(v);
            const double w = (da - axial * v).norm();
            const double d = tri.edge(i, j);
            if (d < w) return out; // a pair of lines is too far apart
            r[static_cast<size_t>(k)] = std::sqrt(std::max(0.0, d * d - w * w));
        }
        double best = std::numeric_limits<double>::infinity();
        for (int s12 : {1, -1})
            for (int s13 : {1, -1})
                for (int s23 : {1, -1})
                    best = std::min(best, std::abs(s12 * r[0] + s23 * r[2] - s13 * r[1]));
        if (best <= 1e-8 * S) {
            out.kind = SolutionKind::Continuum;
            out.near_zero_fraction = 1.0;
        }
        return out;
    }

    // base pair bookkeeping (geometry only; no elimination machinery)
    int bi = -1, bj = -1;
    double cbest = 2.0;
    for (int k = 0; k < 3; ++k) {
        const auto [i, j] = pair_vertices(k);
        const double c = std::abs(scene.lines[i].direction.dot(scene.lines[j].direction));
        if (c < kParallelCos && c < cbest) {
            cbest = c;
            bi = i;
            bj = j;
        }
    }
    if (bi < 0)
        throw ParallelLines("all line pairs are parallel; no base pair available");
    const int bk = 3 - bi - bj;

    const PairGeometry g = common_perpendicular(scene.lines[bi], scene.lines[bj]);
    const double d_base = tri.edge(bi, bj);
    const double diff = d_base - g.dist;
    if (diff < -1e-12 * S) return out; // base edge cannot span its two lines
    const bool point_base = diff <= 0.0;
    double a = 0.0, b = 0.0;
    if (!point_base) {
        const double d_eff = std::sqrt(d_base * d_base - g.dist * g.dist);
        a = d_eff / std::sqrt(2.0 * (1.0 - g.c));
        b = d_eff / std::sqrt(2.0 * (1.0 + g.c));
    }

    const double dik = tri.edge(bi, bk);
    const double djk = tri.edge(bj, bk);
    const double xhat = (d_base * d_base + dik * dik - djk * djk) / (2.0 * d_base);
    const double rho2 = dik * dik - xhat * xhat;
    if (rho2 <= 0.0) return out; // triangle cannot open up; no carry sphere
    const double rho = std::sqrt(rho2);

    const Vec& vi = scene.lines[bi].direction;
    const Vec& vj = scene.lines[bj].direction;
    const Vec& vk = scene.lines[bk].direction;
    const Vec Pi0 = scene.lines[bi].anchor + g.t_foot_i * vi;
    const Vec Pi1 = a * vi;
    const Vec Pi2 = -b * vi;
    const Vec Pj0 = scene.lines[bj].anchor + g.t_foot_j * vj;
    const Vec Pj1 = a * vj;
    const Vec Pj2 = b * vj;

    const auto dim = scene.dim();
    Vec P1(dim), P2(dim), E(dim), O(dim), D3(dim);

    const double window = 1.05 * rho + 1e-9 * S;
    constexpr int kCoarse = 32;

    struct UZero {
        double u;
        double f;
    };

    // evaluates G(theta); optionally refines every coarse local minimum and
    // reports those with f below accept2
    auto sweep_eval = [&](double theta, std::vector<UZero>* zeros, double accept2,
                          double* ti_out, double* tj_out) -> double {
        const double ct = std::cos(theta), st = std::sin(theta);
        const double ti = g.t_foot_i + a * ct - b * st;
        const double tj = g.t_foot_j + a * ct + b * st;
        if (ti_out) *ti_out = ti;
        if (tj_out) *tj_out = tj;
        P1 = Pi0 + ct * Pi1 + st * Pi2;
        P2 = Pj0 + ct * Pj1 + st * Pj2;
        E = (P2 - P1) / d_base;
        O = P1 + xhat * E;
        D3 = scene.lines[bk].anchor - O;
        SphereLineDist f{E.dot(vk), E.dot(D3), vk.dot(D3), D3.squaredNorm(), rho};

        const double u0 = -f.B1;
        const double lo = u0 - window, hi = u0 + window;
        const double h = (hi - lo) / kCoarse;
        std::array<double, kCoarse + 1> fv{};
        for (int m = 0; m <= kCoarse; ++m) fv[static_cast<size_t>(m)] = f(lo + m * h);

        double best = std::numeric_limits<double>::infinity();
        const double trigger = std::max(2.0 * h, std::sqrt(opts.tolerance) * S);
        for (int m = 1; m < kCoarse; ++m) {
            const double fm = fv[static_cast<size_t>(m)];
            if (fm > fv[static_cast<size_t>(m) - 1] || fm > fv[static_cast<size_t>(m) + 1])
                continue;
            if (std::sqrt(fm) > trigger && zeros == nullptr) {
                best = std::min(best, fm);
                continue;
            }
            double ustar = 0.0;
            const double fmin =
                golden_min_fn(f, lo + (m - 1) * h, lo + (m + 1) * h, 48, &ustar);
            best = std::min(best, fmin);
            if (zeros && fmin <= accept2) zeros->push_back({ustar, fmin});
        }
        best = std::min({best, fv[0], fv[kCoarse]});
        return best;
    };

    const double accept = opts.tolerance * S;
    const double accept2 = accept * accept;

    if (point_base) {
        std::vector<UZero> zeros;
        double ti = 0, tj = 0;
        sweep_eval(0.0, &zeros, accept2, &ti, &tj);
        for (const UZero& z : zeros) {
            Configuration c;
            c.theta = 0.0;
            c.t[bi] = ti;
            c.t[bj] = tj;
            c.t[bk] = z.u;
            c.p1 = scene.lines[0].point_at(c.t[0]);
            c.p2 = scene.lines[1].point_at(c.t[1]);
            c.p3 = scene.lines[2].point_at(c.t[2]);
            const std::array<const Vec*, 3> p{&c.p1, &c.p2, &c.p3};
            double res = 0.0;
            for (int e = 0; e < 3; ++e) {
                const auto [u, v] = pair_vertices(e);
                res = std::max(res, std::abs((*p[u] - *p[v]).norm() - tri.edge(u, v)));
            }
            c.residual = res;
            out.configurations.push_back(std::move(c));
        }
        dedup_and_sort(out.configurations, 1e-6 * S);
        return out;
    }

    const int n = opts.n_samples;
    const double dtheta = kTau / n;
    std::vector<float> gdist(static_cast<size_t>(n)); // float keeps the scan cache-friendly
    int near_zero = 0;
    for (int m = 0; m < n; ++m) {
        const double G = sweep_eval(m * dtheta, nullptr, accept2, nullptr, nullptr);
        const double dist = std::sqrt(std::max(0.0, G));
        gdist[static_cast<size_t>(m)] = static_cast<float>(dist);
        if (dist <= accept) ++near_zero;
    }
    out.near_zero_fraction = static_cast<double>(near_zero) / n;
    if (out.near_zero_fraction > opts.continuum_fraction) {
        out.kind = SolutionKind::Continuum;
        return out;
    }

    // theta windows worth refining: local minima of the sampled distance that
    // could reach zero given the sweep's Lipschitz slope
    struct ThetaCand {
        int m;
        float d;
    };
    std::vector<ThetaCand> cands;
    // bound on |d dist / d theta|: the sphere center and orientation move no
    // faster than the base vertices do
    const double vmax = std::hypot(a, b);
    const double lipschitz = vmax * (1.0 + 2.0 * (std::abs(xhat) + rho) / d_base);
    const double slope_budget = 2.0 * lipschitz * dtheta + std::sqrt(opts.tolerance) * S;
    for (int m = 0; m < n; ++m) {
        const float d0 = gdist[static_cast<size_t>(m)];
        const float dp = gdist[static_cast<size_t>((m + n - 1) % n)];
        const float dn = gdist[static_cast<size_t>((m + 1) % n)];
        if (d0 <= dp && d0 <= dn && d0 <= slope_budget) cands.push_back({m, d0});
    }
    std::sort(cands.begin(), cands.end(), [](const ThetaCand& x, const ThetaCand& y) {
        return x.d < y.d;
    });
    if (cands.size() > 64) cands.resize(64);

    for (const ThetaCand& cand : cands) {
        // golden refinement of G over the bracketing theta window
        double ta = (cand.m - 1) * dtheta, tb = (cand.m + 1) * dtheta;
        double c = tb - kGolden * (tb - ta);
        double d = ta + kGolden * (tb - ta);
        double fc = sweep_eval(c, nullptr, accept2, nullptr, nullptr);
        double fd = sweep_eval(d, nullptr, accept2, nullptr, nullptr);
        for (int it = 0; it < 60; ++it) {
            if (fc < fd) {
                tb = d;
                d = c;
                fd = fc;
                c = tb - kGolden * (tb - ta);
                fc = sweep_eval(c, nullptr, accept2, nullptr, nullptr);
            } else {
                ta = c;
                c = d;
                fc = fd;
                d = ta + kGolden * (tb - ta);
                fd = sweep_eval(d, nullptr, accept2, nullptr, nullptr);
            }
        }
        const double tstar = fc < fd ? c : d;

        std::vector<UZero> zeros;
        double ti = 0, tj = 0;
        sweep_eval(tstar, &zeros, accept2, &ti, &tj);
        for (const UZero& z : zeros) {
            Configuration cf;
            cf.theta = tstar < 0.0 ? tstar + kTau : tstar;
            cf.t[bi] = ti;
            cf.t[bj] = tj;
            cf.t[bk] = z.u;
            cf.p1 = scene.lines[0].point_at(cf.t[0]);
            cf.p2 = scene.lines[1].point_at(cf.t[1]);
            cf.p3 = scene.lines[2].point_at(cf.t[2]);
            const std::array<const Vec*, 3> p{&cf.p1, &cf.p2, &cf.p3};
            double res = 0.0;
            for (int e = 0; e < 3; ++e) {
                const auto [u, v] = pair_vertices(e);
                res = std::max(res, std::abs((*p[u] - *p[v]).norm() - tri.edge(u, v)));
            }
            cf.residual = res;
            out.configurations.push_back(std::move(cf));
        }
    }

    dedup_and_sort(out.configurations, 1e-6 * S);
    return out;
}

} // namespace trilinea
