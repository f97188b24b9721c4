#ifndef METROMESH_RENDER_HPP
#define METROMESH_RENDER_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "metromesh/mesh.hpp"

namespace metromesh {

struct RenderOptions {
    double width_px = 800.0;
    /// Per-node scalar to color triangles with; wireframe only when absent.
    std::optional<std::vector<double>> values;
    const char* value_label = "phi";
};

/// Deterministic SVG: one polygon per triangle over a viewport fixed by the
/// superdomain, plus a legend group when node values are given.
void render_svg(std::ostream& out, const Mesh& mesh, const RenderOptions& options = {});

} // namespace metromesh

#endif
