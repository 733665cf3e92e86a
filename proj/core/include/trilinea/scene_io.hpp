#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trilinea/geometry.hpp"
#include "trilinea/mechanism.hpp"

namespace trilinea {

// Parsed scene description: three lines, one triangle, run options.
struct SceneFile {
    int dimension = 2;
    std::array<Vec, 3> anchors{};
    std::array<Vec, 3> directions{}; // normalized on load
    double d12 = 0, d13 = 0, d23 = 0;
    int side = 1;
    int samples = 1024;
    std::optional<long long> seed;

    Scene to_scene() const;
    TriangleSpec to_triangle(bool allow_degenerate = false) const;
};

SceneFile parse_scene_text(const std::string& text);
SceneFile parse_scene(const std::filesystem::path& path);
std::string serialize_scene(const SceneFile& scene);
void write_scene(const SceneFile& scene, const std::filesystem::path& path);

// Trace table: theta, the three vertex positions, edge deviations, line
// incidence deviations.  Column count is 1 + 3*dimension + 6.
std::string trace_to_csv(const std::vector<MotionState>& states, const Scene& scene,
                         const TriangleSpec& tri);
void write_trace_csv(const std::vector<MotionState>& states, const Scene& scene,
                     const TriangleSpec& tri, const std::filesystem::path& path);

struct LoadedTrace {
    int dimension = 0;
    std::vector<double> theta;
    std::vector<Vec> p1, p2, p3;
    std::vector<std::array<double, 3>> residual_edges;
    std::vector<std::array<double, 3>> residual_lines;
};

// Parses a trace and re-validates it: residuals recomputed from the stored
// coordinates must match the stored residual columns within 1e-12.
LoadedTrace load_trace_csv(const std::filesystem::path& path, const Scene& scene,
                           const TriangleSpec& tri);

struct RenderOptions {
    bool rolling = false; // draw the fixed circle and the half-radius roller
    int phases = 8;       // triangle snapshots along the trace
};

// Scalable vector drawing of a trace: the three lines, the three vertex
// paths, triangle snapshots, optional circle pair.  Works for planar scenes
// and for axis scenes via their canonical plane; byte-deterministic.
std::string render_svg(const std::vector<MotionState>& states, const Scene& scene,
                       const TriangleSpec& tri, const RenderOptions& opts = {});
void write_svg(const std::vector<MotionState>& states, const Scene& scene,
               const TriangleSpec& tri, const std::filesystem::path& path,
               const RenderOptions& opts = {});

// Writes via a temporary file in the target directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

} // namespace trilinea
