#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trilinea/mechanism.hpp"
#include "trilinea/scene_io.hpp"
#include "trilinea/solver.hpp"

namespace trilinea::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string scene_path;
    std::string out_path;
    std::string format = "csv";
    double tolerance = 1e-8;
    int samples = 0; // 0: take from the scene file
    int side = 0;    // 0: take from the scene file
    bool oracle = false;
    bool rolling = false;
    bool allow_degenerate = false;
};

struct LoadedScene {
    SceneFile file;
    Scene scene;
    TriangleSpec tri;
};

LoadedScene load(const Options& o) {
    SceneFile f = parse_scene(o.scene_path);
    Scene s = f.to_scene();
    TriangleSpec t = f.to_triangle(o.allow_degenerate);
    return {std::move(f), std::move(s), t};
}

int effective_samples(const Options& o, const SceneFile& f) {
    const int n = o.samples > 0 ? o.samples : f.samples;
    if (n < 2)
        throw ValidationError("sample count must be at least 2");
    return n;
}

int effective_side(const Options& o, const SceneFile& f) {
    const int s = o.side != 0 ? o.side : f.side;
    if (s != 1 && s != -1)
        throw ValidationError("side must be +1 or -1");
    return s;
}

std::pair<double, double> max_residuals(const std::vector<MotionState>& states,
                                        const Scene& scene, const TriangleSpec& tri) {
    double edge = 0.0, line = 0.0;
    for (const MotionState& st : states) {
        edge = std::max(edge, std::abs((st.p1 - st.p2).norm() - tri.d12));
        edge = std::max(edge, std::abs((st.p1 - st.p3).norm() - tri.d13));
        edge = std::max(edge, std::abs((st.p2 - st.p3).norm() - tri.d23));
        line = std::max(line, scene.lines[0].distance_to(st.p1));
        line = std::max(line, scene.lines[1].distance_to(st.p2));
        line = std::max(line, scene.lines[2].distance_to(st.p3));
    }
    return {edge, line};
}

json feasibility_json(const FeasibilityReport& rep) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["scene_class"] = to_string(rep.scene_class);
    j["near_feasible"] = rep.near_feasible;
    j["near_parallel_warning"] = rep.near_parallel_warning;
    if (!rep.reason.empty()) j["reason"] = rep.reason;
    if (rep.ratios) j["ratios"] = {(*rep.ratios)[0], (*rep.ratios)[1], (*rep.ratios)[2]};
    if (rep.side) j["side"] = *rep.side;
    if (rep.ranges) {
        json r = json::array();
        for (const RangeInterval& iv : *rep.ranges)
            r.push_back({{"center_t", iv.center_t}, {"half_length", iv.half_length}});
        j["ranges"] = std::move(r);
    }
    return j;
}

int fail(std::ostream& out, std::ostream& err, const char* type, const std::string& msg,
         int code) {
    json j;
    j["error"] = {{"type", type}, {"message", msg}};
    out << j.dump() << "\n";
    err << msg << "\n";
    return code;
}

int cmd_feasibility(const Options& o, std::ostream& out) {
    const LoadedScene ls = load(o);
    const FeasibilityReport rep = feasibility(ls.scene, ls.tri);
    json j;
    j["command"] = "feasibility";
    j["report"] = feasibility_json(rep);
    out << j.dump() << "\n";
    return rep.verdict == Verdict::Infeasible ? 1 : 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    if (o.format != "csv")
        throw ValidationError("simulate writes csv; use the render command for svg");
    const LoadedScene ls = load(o);
    const int n = effective_samples(o, ls.file);
    const int side = effective_side(o, ls.file);
    const auto states = trace(ls.scene, ls.tri, side, n);
    const auto [max_edge, max_line] = max_residuals(states, ls.scene, ls.tri);
    json j;
    j["command"] = "simulate";
    j["samples"] = n;
    j["side"] = side;
    j["max_edge_residual"] = max_edge;
    j["max_line_residual"] = max_line;
    if (!o.out_path.empty()) {
        write_trace_csv(states, ls.scene, ls.tri, o.out_path);
        j["out"] = o.out_path;
    }
    out << j.dump() << "\n";
    return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const LoadedScene ls = load(o);
    SolveOptions so;
    so.tolerance = o.tolerance;
    const ConfigurationSet cs = solve_configurations(ls.scene, ls.tri, so);

    json j;
    j["command"] = "solve";
    j["kind"] = to_string(cs.kind);
    j["degenerate_fraction"] = cs.degenerate_fraction;
    int exit_code = 0;

    if (cs.kind == SolutionKind::Finite) {
        j["count"] = cs.count();
        char msg[48];
        std::snprintf(msg, sizeof msg, "count=%d (bound 8)", cs.count());
        j["message"] = msg;
        json arr = json::array();
        for (const Configuration& c : cs.configurations)
            arr.push_back({{"theta", c.theta},
                           {"t", {c.t[0], c.t[1], c.t[2]}},
                           {"residual", c.residual},
                           {"near_tangent", c.near_tangent}});
        j["configurations"] = std::move(arr);
        if (cs.count() == 0) exit_code = 1;
        if (!o.out_path.empty()) {
            atomic_write(o.out_path, j.dump(2) + "\n");
            j["out"] = o.out_path;
        }
    } else {
        j["witness_samples"] = cs.witness.size();
        if (!o.out_path.empty()) {
            write_trace_csv(cs.witness, ls.scene, ls.tri, o.out_path);
            j["out"] = o.out_path;
        }
    }

    if (o.oracle) {
        const OracleResult orc = oracle_sweep(ls.scene, ls.tri);
        json oj;
        oj["kind"] = to_string(orc.kind);
        oj["near_zero_fraction"] = orc.near_zero_fraction;
        bool agrees = orc.kind == cs.kind;
        if (cs.kind == SolutionKind::Finite) {
            oj["count"] = static_cast<int>(orc.configurations.size());
            agrees = agrees && orc.configurations.size() == cs.configurations.size();
            if (agrees) {
                const double match_tol = 1e-6 * ls.tri.scale();
                for (const Configuration& c : cs.configurations) {
                    const bool hit =
                        std::any_of(orc.configurations.begin(), orc.configurations.end(),
                                    [&](const Configuration& oc) {
                                        return std::max({std::abs(c.t[0] - oc.t[0]),
                                                         std::abs(c.t[1] - oc.t[1]),
                                                         std::abs(c.t[2] - oc.t[2])}) <=
                                               match_tol;
                                    });
                    if (!hit) {
                        agrees = false;
                        break;
                    }
                }
            }
        }
        oj["agrees"] = agrees;
        j["oracle"] = std::move(oj);
        if (!agrees) exit_code = 3;
    }

    out << j.dump() << "\n";
    return exit_code;
}

int cmd_render(const Options& o, std::ostream& out) {
    const LoadedScene ls = load(o);
    if (o.out_path.empty())
        throw ValidationError("render requires --out");
    const int n = effective_samples(o, ls.file);
    const int side = effective_side(o, ls.file);
    const auto states = trace(ls.scene, ls.tri, side, n);
    RenderOptions ro;
    ro.rolling = o.rolling;
    write_svg(states, ls.scene, ls.tri, o.out_path, ro);
    json j;
    j["command"] = "render";
    j["out"] = o.out_path;
    j["samples"] = n;
    j["side"] = side;
    j["rolling"] = o.rolling;
    out << j.dump() << "\n";
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const LoadedScene ls = load(o);
    const FeasibilityReport rep = feasibility(ls.scene, ls.tri);
    json j;
    j["command"] = "verify";
    j["report"] = feasibility_json(rep);
    if (rep.verdict == Verdict::Infeasible) {
        out << j.dump() << "\n";
        return 1;
    }

    const int n = effective_samples(o, ls.file);
    const int side = rep.side.value_or(effective_side(o, ls.file));
    const auto states = trace(ls.scene, ls.tri, side, n);
    const double S = ls.tri.scale();
    json checks;
    bool all_ok = true;

    {
        const auto [max_edge, max_line] = max_residuals(states, ls.scene, ls.tri);
        const bool ok = max_edge <= o.tolerance * S && max_line <= o.tolerance * S;
        checks["residuals"] = {{"max_edge", max_edge}, {"max_line", max_line}, {"ok", ok}};
        all_ok = all_ok && ok;
    }

    if (rep.verdict == Verdict::FeasibleMechanism && rep.ranges) {
        // amplitude of each vertex's run, probed at two quarter phases,
        // against the closed-form half-length
        const MotionState s0 = motion_state(0.0, ls.scene, ls.tri, side);
        const MotionState s1 = motion_state(std::numbers::pi / 2, ls.scene, ls.tri, side);
        const int coord[3] = {0, 1, 3}; // foot coordinates of p1, p2, p3
        json ranges = json::array();
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            const double amp = std::hypot(s0.t[coord[i]], s1.t[coord[i]]);
            const double expected = (*rep.ranges)[static_cast<size_t>(i)].half_length;
            const double rel = std::abs(amp - expected) / expected;
            ok = ok && rel <= std::max(o.tolerance, 1e-12);
            ranges.push_back({{"amplitude", amp}, {"expected", expected}, {"rel_err", rel}});
        }
        checks["ranges"] = {{"per_line", std::move(ranges)}, {"ok", ok}};
        all_ok = all_ok && ok;

        const CircumcircleReport cc = circumcircle_check(states, ls.scene);
        if (cc.applicable) {
            const bool cok = cc.max_dev <= o.tolerance * std::max(cc.radius, S);
            checks["circumcircle"] = {{"radius", cc.radius},
                                      {"max_radius_dev", cc.max_radius_dev},
                                      {"max_center_dev", cc.max_center_dev},
                                      {"ok", cok}};
            all_ok = all_ok && cok;
        }

        if (ls.scene.cls.tag == SceneTag::ConcurrentPlanar) {
            const RollingCircleModel model = rolling_model(ls.scene, ls.tri);
            const double dev = rolling_equivalence(ls.scene, ls.tri, model, 512);
            const bool rok = dev <= o.tolerance * model.R;
            checks["rolling"] = {{"R", model.R}, {"r", model.r}, {"max_dev", dev}, {"ok", rok}};
            all_ok = all_ok && rok;
        }
    }

    j["checks"] = std::move(checks);
    j["all_ok"] = all_ok;
    out << j.dump() << "\n";
    return all_ok ? 0 : 3;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rigid triangle with one vertex per line: feasibility, motion, enumeration"};
    app.require_subcommand(1);

    Options o;
    if (const char* env = std::getenv("TRILINEA_TOLERANCE")) {
        double v = 0.0;
        const std::string s(env);
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || !(v > 0.0))
            return fail(out, err, "validation", "TRILINEA_TOLERANCE is not a positive number",
                        2);
        o.tolerance = v;
    }

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("scene", o.scene_path, "scene JSON file")->required();
        sub->add_option("--tolerance", o.tolerance, "residual tolerance, relative to scale");
        sub->add_option("--out", o.out_path, "artifact output path");
        sub->add_option("--samples", o.samples, "number of samples");
        sub->add_option("--side", o.side, "triangle orientation (+1 or -1)");
        sub->add_flag("--allow-degenerate", o.allow_degenerate, "accept collinear triangles");
    };

    CLI::App* feas =
        app.add_subcommand("feasibility", "decide whether the triangle can move on the lines");
    add_common(feas);
    CLI::App* sim = app.add_subcommand("simulate", "sample the motion and write a trace");
    add_common(sim);
    sim->add_option("--format", o.format, "output format (csv)");
    CLI::App* solve = app.add_subcommand("solve", "enumerate all static placements");
    add_common(solve);
    solve->add_flag("--oracle", o.oracle, "cross-check against the independent sweep oracle");
    CLI::App* render = app.add_subcommand("render", "draw the scene and traces as svg");
    add_common(render);
    render->add_flag("--rolling", o.rolling, "draw the fixed circle and the rolling circle");
    CLI::App* verify = app.add_subcommand("verify", "run the motion invariants end to end");
    add_common(verify);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("trilinea");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (feas->parsed()) return cmd_feasibility(o, out);
        if (sim->parsed()) return cmd_simulate(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (render->parsed()) return cmd_render(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        err << "no command selected\n";
        return 2;
    } catch (const InternalInconsistency& e) {
        return fail(out, err, "internal_inconsistency", e.what(), 3);
    } catch (const InfeasibleScene& e) {
        return fail(out, err, "infeasible", e.what(), 1);
    } catch (const NoThirdVertex& e) {
        return fail(out, err, "infeasible", e.what(), 1);
    } catch (const AmbiguousSide& e) {
        return fail(out, err, "infeasible", e.what(), 1);
    } catch (const EdgeTooShort& e) {
        return fail(out, err, "infeasible", e.what(), 1);
    } catch (const Error& e) {
        return fail(out, err, "validation", e.what(), 2);
    } catch (const std::exception& e) {
        return fail(out, err, "error", e.what(), 2);
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<size_t>(argc) - 1 : 0);
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace trilinea::cli
