#ifndef METROMESH_MESH_HPP
#define METROMESH_MESH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metromesh/geometry.hpp"

namespace metromesh {

/// One edge of the domain polygon, connecting two constant nodes. Sloped
/// segments satisfy y = a x + b; vertical ones x = a with y in [y_min, y_max].
struct BoundarySegment {
    enum class Kind { sloped, vertical };
    Kind kind = Kind::sloped;
    double a = 0.0;
    double b = 0.0; // unused when vertical
    double y_min = 0.0;
    double y_max = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::array<int, 2> endpoints{-1, -1};
};

/// True when p satisfies the segment's line equation within tol and lies
/// inside the segment's endpoint range (with tol slack).
bool on_segment(Point2 p, const BoundarySegment& seg, double tol);

/// Segment table plus the on-segment tolerance, built once per domain.
struct BoundaryTable {
    std::vector<BoundarySegment> segments;
    double tol = 1e-5;
};

struct MeshQuality {
    double mean_normalized_area = 0.0; // mean of S_elem / S
    double area_variation = 0.0;       // mean of |S_elem - S| / S
    int n_points = 0;
    int n_elements = 0;
};

/// Triangular mesh over a polygonal domain. Points are only ever appended, so
/// indices stay stable across the pipeline; the first nodes are the polygon
/// vertices (constant nodes) in rim order.
struct Mesh {
    std::vector<Point2> points;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::uint8_t> is_constant;
    std::vector<std::uint8_t> is_boundary;
    double element_size_h = 0.0;
    double prescribed_area = 0.0;
    BoundaryTable boundary;

    int n_points() const { return static_cast<int>(points.size()); }
    int n_elements() const { return static_cast<int>(triangles.size()); }
    TriangleGeom tri_geom(int t) const {
        const auto& tr = triangles[t];
        return TriangleGeom(points[tr[0]], points[tr[1]], points[tr[2]]);
    }
    BBox bbox() const;
    double total_area() const;
    /// Constant nodes in rim (construction) order.
    std::vector<int> rim_nodes() const;
};

/// Area of the equilateral triangle with the given edge length; the element
/// area prescribed for element size h.
double prescribed_area_for(double h);

/// Regular-polygon fan mesh: n vertices on the circle of the given radius plus
/// the center node, one triangle per polygon edge. Rim nodes are constant and
/// boundary. Throws std::invalid_argument for n < 3.
Mesh mesh_init(int n_vertices, double radius, double h);

/// Fan mesh from an explicit vertex list (assumed a simple polygon). With a
/// weight pair present the fan center is shifted: vertices split by the sign
/// of |p|^2 - |center|^2 relative to the superdomain center (0,0), then
/// center = (w1 * sum(far) + w2 * sum(near)) / n. Throws
/// std::runtime_error("center placement failed") when the resulting fan
/// contains a degenerate or inverted triangle.
Mesh mesh_init_explicit(const std::vector<Point2>& vertices, double h,
                        std::optional<std::array<double, 2>> weight = std::nullopt);

struct RefineResult {
    Mesh mesh;
    int count_split = 0;
};

/// Splits every triangle whose area exceeds 1.5x the prescribed area at the
/// midpoint of its longest bar (ties broken by lowest edge index). Midpoints
/// shared between neighbours are inserted once; new nodes are classified
/// against the boundary table.
RefineResult refine_pass(const Mesh& mesh);

struct RepairResult {
    Mesh mesh;
    int count_repaired = 0;
};

/// Replaces every triangle that has a mesh node in the interior of one of its
/// edges by the two triangles connecting that node to the opposite vertex.
/// Runs to a fixed point.
RepairResult repair_illegal(const Mesh& mesh);

/// One segment per adjacent constant-node pair in rim order (closing last to
/// first); sloped versus vertical decided by |x1 - x2| > tol.
BoundaryTable build_boundary_segments(const Mesh& mesh);

enum class NodeClass { boundary, internal };

/// A node is boundary when it satisfies some segment's line equation within
/// tol and lies within that segment's endpoint range.
NodeClass classify_node(Point2 p, const BoundaryTable& table);

MeshQuality quality(const Mesh& mesh);

/// Exhaustive pairwise audit: any two triangles share nothing, one node or a
/// full edge, and no interiors overlap. Intended for test-sized meshes.
bool audit_conforming(const Mesh& mesh, std::string* why = nullptr);

/// No node may lie strictly inside another triangle's edge.
bool audit_no_illegal(const Mesh& mesh, std::string* why = nullptr);

} // namespace metromesh

#endif
