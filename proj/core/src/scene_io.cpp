#include "trilinea/scene_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace trilinea {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    if (x == 0.0) x = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const json& require_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("scene file: missing field '") + key + "'");
    return *it;
}

double require_number(const json& obj, const char* key) {
    const json& v = require_field(obj, key);
    if (!v.is_number())
        throw ParseError(std::string("scene file: field '") + key + "' must be a number");
    return v.get<double>();
}

Vec parse_vector(const json& arr, int dim, const std::string& what) {
    if (!arr.is_array())
        throw ParseError("scene file: " + what + " must be an array");
    if (static_cast<int>(arr.size()) != dim) {
        std::ostringstream os;
        os << "scene file: dimension mismatch: " << what << " has " << arr.size()
           << " entries, expected " << dim;
        throw ValidationError(os.str());
    }
    Vec v(dim);
    for (int k = 0; k < dim; ++k) {
        if (!arr[static_cast<size_t>(k)].is_number())
            throw ParseError("scene file: " + what + " entries must be numbers");
        v[k] = arr[static_cast<size_t>(k)].get<double>();
        if (!std::isfinite(v[k]))
            throw ValidationError("scene file: " + what + " has a non-finite entry");
    }
    return v;
}

} // namespace

SceneFile parse_scene_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scene file: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("scene file: top level must be an object");

    SceneFile s;
    const json& jd = require_field(j, "dimension");
    if (!jd.is_number_integer())
        throw ParseError("scene file: field 'dimension' must be an integer");
    s.dimension = jd.get<int>();
    if (s.dimension < 2)
        throw ValidationError("scene file: dimension must be at least 2");

    const json& jl = require_field(j, "lines");
    if (!jl.is_array() || jl.size() != 3)
        throw ValidationError("scene file: 'lines' must hold exactly 3 records");
    for (int i = 0; i < 3; ++i) {
        const json& rec = jl[static_cast<size_t>(i)];
        if (!rec.is_object())
            throw ParseError("scene file: each line record must be an object");
        const std::string tag = "line " + std::to_string(i + 1);
        s.anchors[static_cast<size_t>(i)] =
            parse_vector(require_field(rec, "anchor"), s.dimension, tag + " anchor");
        Vec dir = parse_vector(require_field(rec, "direction"), s.dimension, tag + " direction");
        const double n = dir.norm();
        if (n == 0.0)
            throw ValidationError("scene file: zero direction on " + tag);
        s.directions[static_cast<size_t>(i)] = dir / n;
    }

    const json& jt = require_field(j, "triangle");
    if (!jt.is_object())
        throw ParseError("scene file: 'triangle' must be an object");
    s.d12 = require_number(jt, "d12");
    s.d13 = require_number(jt, "d13");
    s.d23 = require_number(jt, "d23");
    for (double d : {s.d12, s.d13, s.d23})
        if (!(d > 0.0) || !std::isfinite(d))
            throw ValidationError("scene file: non-positive edge length");

    if (const auto it = j.find("options"); it != j.end()) {
        const json& jo = *it;
        if (!jo.is_object())
            throw ParseError("scene file: 'options' must be an object");
        if (const auto f = jo.find("side"); f != jo.end()) {
            if (!f->is_number_integer())
                throw ParseError("scene file: option 'side' must be an integer");
            s.side = f->get<int>();
            if (s.side != 1 && s.side != -1)
                throw ValidationError("scene file: option 'side' must be +1 or -1");
        }
        if (const auto f = jo.find("samples"); f != jo.end()) {
            if (!f->is_number_integer())
                throw ParseError("scene file: option 'samples' must be an integer");
            s.samples = f->get<int>();
            if (s.samples < 2)
                throw ValidationError("scene file: option 'samples' must be at least 2");
        }
        if (const auto f = jo.find("seed"); f != jo.end()) {
            if (!f->is_number_integer())
                throw ParseError("scene file: option 'seed' must be an integer");
            s.seed = f->get<long long>();
        }
    }
    return s;
}

SceneFile parse_scene(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open scene file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_text(buf.str());
}

std::string serialize_scene(const SceneFile& scene) {
    json j;
    j["dimension"] = scene.dimension;
    json lines = json::array();
    for (int i = 0; i < 3; ++i) {
        json rec;
        rec["anchor"] = std::vector<double>(scene.anchors[static_cast<size_t>(i)].begin(),
                                            scene.anchors[static_cast<size_t>(i)].end());
        rec["direction"] = std::vector<double>(scene.directions[static_cast<size_t>(i)].begin(),
                                               scene.directions[static_cast<size_t>(i)].end());
        lines.push_back(std::move(rec));
    }
    j["lines"] = std::move(lines);
    j["triangle"] = {{"d12", scene.d12}, {"d13", scene.d13}, {"d23", scene.d23}};
    json opts;
    opts["side"] = scene.side;
    opts["samples"] = scene.samples;
    if (scene.seed) opts["seed"] = *scene.seed;
    j["options"] = std::move(opts);
    return j.dump(2) + "\n";
}

void write_scene(const SceneFile& scene, const std::filesystem::path& path) {
    atomic_write(path, serialize_scene(scene));
}

Scene SceneFile::to_scene() const {
    return make_scene(Line(anchors[0], directions[0]), Line(anchors[1], directions[1]),
                      Line(anchors[2], directions[2]));
}

TriangleSpec SceneFile::to_triangle(bool allow_degenerate) const {
    return TriangleSpec(d12, d13, d23, allow_degenerate);
}

// ---------------------------------------------------------------------------
// trace CSV
// ---------------------------------------------------------------------------

namespace {

std::array<double, 3> edge_residuals(const MotionState& st, const TriangleSpec& tri) {
    return {std::abs((st.p1 - st.p2).norm() - tri.d12),
            std::abs((st.p1 - st.p3).norm() - tri.d13),
            std::abs((st.p2 - st.p3).norm() - tri.d23)};
}

std::array<double, 3> line_residuals(const MotionState& st, const Scene& scene) {
    return {scene.lines[0].distance_to(st.p1), scene.lines[1].distance_to(st.p2),
            scene.lines[2].distance_to(st.p3)};
}

} // namespace

std::string trace_to_csv(const std::vector<MotionState>& states, const Scene& scene,
                         const TriangleSpec& tri) {
    if (states.empty())
        throw ValidationError("cannot serialize an empty trace");
    const int dim = static_cast<int>(scene.dim());
    std::string out;
    out.reserve(states.size() * (static_cast<size_t>(dim) * 3 + 7) * 20);

    out += "theta";
    for (int v = 1; v <= 3; ++v)
        for (int k = 0; k < dim; ++k)
            out += ",p" + std::to_string(v) + "_" + std::to_string(k);
    out += ",res_edge_12,res_edge_13,res_edge_23,res_line_1,res_line_2,res_line_3\n";

    double prev = -std::numeric_limits<double>::infinity();
    for (const MotionState& st : states) {
        if (!(st.theta > prev))
            throw ValidationError("trace thetas must be strictly increasing");
        prev = st.theta;
        out += fmt17(st.theta);
        for (const Vec* p : {&st.p1, &st.p2, &st.p3})
            for (int k = 0; k < dim; ++k) {
                out += ',';
                out += fmt17((*p)[k]);
            }
        for (double r : edge_residuals(st, tri)) {
            out += ',';
            out += fmt17(r);
        }
        for (double r : line_residuals(st, scene)) {
            out += ',';
            out += fmt17(r);
        }
        out += '\n';
    }
    return out;
}

void write_trace_csv(const std::vector<MotionState>& states, const Scene& scene,
                     const TriangleSpec& tri, const std::filesystem::path& path) {
    atomic_write(path, trace_to_csv(states, scene, tri));
}

namespace {

std::vector<std::string_view> split_csv(std::string_view row) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        const size_t pos = row.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(row.substr(start));
            break;
        }
        out.push_back(row.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view tok, size_t row) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        std::ostringstream os;
        os << "trace file: bad number '" << tok << "' in row " << row;
        throw ParseError(os.str());
    }
    return v;
}

} // namespace

LoadedTrace load_trace_csv(const std::filesystem::path& path, const Scene& scene,
                           const TriangleSpec& tri) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open trace file: " + path.string());

    const int dim = static_cast<int>(scene.dim());
    const size_t ncols = 1 + 3 * static_cast<size_t>(dim) + 6;

    LoadedTrace tr;
    tr.dimension = dim;

    std::string row;
    if (!std::getline(in, row))
        throw ParseError("trace file: empty file");
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (split_csv(row).size() != ncols) {
        std::ostringstream os;
        os << "trace file: header has " << split_csv(row).size() << " columns, expected "
           << ncols;
        throw ParseError(os.str());
    }

    size_t rowno = 1;
    while (std::getline(in, row)) {
        ++rowno;
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        const auto toks = split_csv(row);
        if (toks.size() != ncols) {
            std::ostringstream os;
            os << "trace file: row " << rowno << " has " << toks.size()
               << " columns, expected " << ncols;
            throw ParseError(os.str());
        }
        size_t c = 0;
        tr.theta.push_back(parse_double(toks[c++], rowno));
        for (auto* dst : {&tr.p1, &tr.p2, &tr.p3}) {
            Vec p(dim);
            for (int k = 0; k < dim; ++k) p[k] = parse_double(toks[c++], rowno);
            dst->push_back(std::move(p));
        }
        std::array<double, 3> re{}, rl{};
        for (double& r : re) r = parse_double(toks[c++], rowno);
        for (double& r : rl) r = parse_double(toks[c++], rowno);
        tr.residual_edges.push_back(re);
        tr.residual_lines.push_back(rl);
    }
    if (tr.theta.empty())
        throw ParseError("trace file: no data rows");

    for (size_t k = 0; k + 1 < tr.theta.size(); ++k)
        if (!(tr.theta[k] < tr.theta[k + 1]))
            throw ValidationError("trace file: theta is not strictly increasing");

    for (size_t k = 0; k < tr.theta.size(); ++k) {
        MotionState st;
        st.theta = tr.theta[k];
        st.p1 = tr.p1[k];
        st.p2 = tr.p2[k];
        st.p3 = tr.p3[k];
        const auto re = edge_residuals(st, tri);
        const auto rl = line_residuals(st, scene);
        for (int e = 0; e < 3; ++e) {
            if (std::abs(re[static_cast<size_t>(e)] -
                         tr.residual_edges[k][static_cast<size_t>(e)]) > 1e-12 ||
                std::abs(rl[static_cast<size_t>(e)] -
                         tr.residual_lines[k][static_cast<size_t>(e)]) > 1e-12) {
                std::ostringstream os;
                os << "trace file: stored residuals disagree with coordinates at row "
                   << k + 2;
                throw ValidationError(os.str());
            }
        }
    }
    return tr;
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

struct Box {
    double umin = std::numeric_limits<double>::infinity();
    double umax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    void add(double u, double v) {
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
};

// Liang-Barsky clip of an infinite line (p + t*d) against a rectangle
bool clip_to_box(double pu, double pv, double du, double dv, const Box& box, double& t0,
                 double& t1) {
    t0 = -std::numeric_limits<double>::infinity();
    t1 = std::numeric_limits<double>::infinity();
    const double p[4] = {-du, du, -dv, dv};
    const double q[4] = {pu - box.umin, box.umax - pu, pv - box.vmin, box.vmax - pv};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return false;
            continue;
        }
        const double r = q[k] / p[k];
        if (p[k] < 0.0)
            t0 = std::max(t0, r);
        else
            t1 = std::min(t1, r);
    }
    return t0 < t1;
}

struct Circum {
    bool ok = false;
    double cx = 0, cy = 0, r = 0;
};

Circum circumcircle_2d(double ax, double ay, double bx, double by, double cx, double cy) {
    Circum out;
    const double den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (den == 0.0) return out;
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    out.cx = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den;
    out.cy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den;
    out.r = std::hypot(ax - out.cx, ay - out.cy);
    out.ok = true;
    return out;
}

} // namespace

std::string render_svg(const std::vector<MotionState>& states, const Scene& scene,
                       const TriangleSpec& tri, const RenderOptions& opts) {
    if (states.empty())
        throw ValidationError("cannot render an empty trace");
    if (opts.phases < 1)
        throw ValidationError("at least one triangle snapshot is required");
    const PlanarFrame fr = scene_frame(scene);

    // vertex paths in frame coordinates
    const size_t n = states.size();
    std::array<std::vector<std::pair<double, double>>, 3> paths;
    for (auto& p : paths) p.reserve(n);
    for (const MotionState& st : states) {
        paths[0].emplace_back(fr.u(st.p1), fr.v(st.p1));
        paths[1].emplace_back(fr.u(st.p2), fr.v(st.p2));
        paths[2].emplace_back(fr.u(st.p3), fr.v(st.p3));
    }

    std::vector<size_t> snaps;
    for (int k = 0; k < opts.phases; ++k)
        snaps.push_back(static_cast<size_t>(k) * n / static_cast<size_t>(opts.phases));

    std::optional<Circum> roller;
    double ring_r = 0.0;
    if (opts.rolling) {
        const RollingCircleModel model = rolling_model(scene, tri);
        ring_r = model.R;
        const auto& s0 = states.front();
        roller = circumcircle_2d(fr.u(s0.p1), fr.v(s0.p1), fr.u(s0.p2), fr.v(s0.p2),
                                 fr.u(s0.p3), fr.v(s0.p3));
    }

    Box box;
    for (const auto& path : paths)
        for (const auto& [u, v] : path) box.add(u, v);
    if (roller && roller->ok) {
        box.add(-ring_r, -ring_r);
        box.add(ring_r, ring_r);
    }
    const double du = std::max(box.umax - box.umin, 1e-9);
    const double dv = std::max(box.vmax - box.vmin, 1e-9);
    const double pad = 0.1 * std::max(du, dv);
    box.umin -= pad;
    box.umax += pad;
    box.vmin -= pad;
    box.vmax += pad;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    svg += fmt6(box.umin) + " " + fmt6(-box.vmax) + " " + fmt6(box.umax - box.umin) + " " +
           fmt6(box.vmax - box.vmin) + "\">\n";

    const double stroke = 0.004 * std::max(box.umax - box.umin, box.vmax - box.vmin);
    svg += "<g fill=\"none\" stroke-width=\"" + fmt6(stroke) + "\">\n";

    // scene lines clipped to the view box
    for (int i = 0; i < 3; ++i) {
        const Line& l = scene.lines[static_cast<size_t>(i)];
        const double pu = fr.u(l.anchor), pv = fr.v(l.anchor);
        const double lu = fr.ex.dot(l.direction), lv = fr.ey.dot(l.direction);
        double t0 = 0, t1 = 0;
        if (std::hypot(lu, lv) < 1e-12 || !clip_to_box(pu, pv, lu, lv, box, t0, t1))
            continue;
        svg += "<line stroke=\"#999999\" x1=\"" + fmt6(pu + t0 * lu) + "\" y1=\"" +
               fmt6(-(pv + t0 * lv)) + "\" x2=\"" + fmt6(pu + t1 * lu) + "\" y2=\"" +
               fmt6(-(pv + t1 * lv)) + "\"/>\n";
    }

    // vertex traces
    const char* trace_color[3] = {"#cc3333", "#338833", "#3366cc"};
    for (int i = 0; i < 3; ++i) {
        svg += "<polyline stroke=\"";
        svg += trace_color[i];
        svg += "\" points=\"";
        for (size_t k = 0; k < paths[static_cast<size_t>(i)].size(); ++k) {
            const auto& [u, v] = paths[static_cast<size_t>(i)][k];
            if (k) svg += ' ';
            svg += fmt6(u) + "," + fmt6(-v);
        }
        svg += "\"/>\n";
    }

    // triangle snapshots
    for (size_t idx : snaps) {
        svg += "<polygon stroke=\"#222222\" stroke-opacity=\"0.5\" points=\"";
        for (int i = 0; i < 3; ++i) {
            const auto& [u, v] = paths[static_cast<size_t>(i)][idx];
            if (i) svg += ' ';
            svg += fmt6(u) + "," + fmt6(-v);
        }
        svg += "\"/>\n";
    }

    if (roller && roller->ok) {
        svg += "<circle stroke=\"#888888\" stroke-dasharray=\"" + fmt6(4 * stroke) +
               "\" cx=\"0\" cy=\"0\" r=\"" + fmt6(ring_r) + "\"/>\n";
        svg += "<circle stroke=\"#aa44aa\" cx=\"" + fmt6(roller->cx) + "\" cy=\"" +
               fmt6(-roller->cy) + "\" r=\"" + fmt6(roller->r) + "\"/>\n";
    }

    svg += "</g>\n</svg>\n";
    return svg;
}

void write_svg(const std::vector<MotionState>& states, const Scene& scene,
               const TriangleSpec& tri, const std::filesystem::path& path,
               const RenderOptions& opts) {
    atomic_write(path, render_svg(states, scene, tri, opts));
}

// ---------------------------------------------------------------------------
// atomic file output
// ---------------------------------------------------------------------------

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

} // namespace trilinea
