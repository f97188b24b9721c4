#ifndef METROMESH_DELAUNAY_HPP
#define METROMESH_DELAUNAY_HPP

#include "metromesh/mesh.hpp"

namespace metromesh {

struct FlipStats {
    int passes = 0;
    int flips_accepted = 0;
    int flips_rejected = 0;
};

struct DelaunayOptions {
    int max_passes = 100;
    /// Check every mesh point against every triangle instead of only the
    /// opposite vertices of edge neighbours. Same fixed point, much slower;
    /// kept for conformance testing.
    bool full_scan = false;
};

struct DelaunayResult {
    Mesh mesh;
    FlipStats stats;
};

/// Repeats full passes of edge flipping until a pass performs no flip or
/// max_passes is reached. A shared edge is exchanged for the opposite diagonal
/// only when the violating point is strictly inside the circumcircle and the
/// flip strictly improves the in-circle determinant; rim edges, node
/// positions and the element count are untouched. Throws
/// std::runtime_error("non-conforming mesh") when an edge is shared by more
/// than two triangles.
DelaunayResult delaunay_optimize(const Mesh& mesh, DelaunayOptions options = {});

/// Empty-circumcircle audit over all interior edges.
bool audit_delaunay(const Mesh& mesh, double* worst_violation = nullptr);

} // namespace metromesh

#endif
