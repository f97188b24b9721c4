#include "metromesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace metromesh {

BBox Mesh::bbox() const
{
    if (points.empty()) return {};
    BBox box{points[0].x, points[0].x, points[0].y, points[0].y};
    for (const Point2& p : points) box.expand(p);
    return box;
}

double Mesh::total_area() const
{
    double sum = 0.0;
    for (int t = 0; t < n_elements(); ++t) sum += tri_geom(t).area();
    return sum;
}

std::vector<int> Mesh::rim_nodes() const
{
    std::vector<int> rim;
    for (int i = 0; i < n_points(); ++i)
        if (is_constant[i]) rim.push_back(i);
    return rim;
}

double prescribed_area_for(double h)
{
    return std::sqrt(3.0) / 4.0 * h * h;
}

namespace {

Mesh fan_mesh(const std::vector<Point2>& rim, Point2 center, double h)
{
    const int n = static_cast<int>(rim.size());
    Mesh mesh;
    mesh.points = rim;
    mesh.points.push_back(center);
    mesh.is_constant.assign(mesh.points.size(), 1);
    mesh.is_boundary.assign(mesh.points.size(), 1);
    mesh.is_constant.back() = 0;
    mesh.is_boundary.back() = 0;
    mesh.triangles.reserve(n);
    for (int i = 0; i + 1 < n; ++i) mesh.triangles.push_back({i, i + 1, n});
    mesh.triangles.push_back({0, n - 1, n});
    mesh.element_size_h = h;
    mesh.prescribed_area = prescribed_area_for(h);
    mesh.boundary = build_boundary_segments(mesh);
    return mesh;
}

void check_fan_valid(const Mesh& mesh)
{
    const double eps = degeneracy_eps(mesh.bbox().diag_sq());
    // All fan triangles sharing the same winding implies the center sees the
    // whole rim; the closing triangle is stored with reversed vertex order.
    double reference = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        double s = mesh.tri_geom(t).signed_area();
        if (t == mesh.n_elements() - 1) s = -s;
        if (std::abs(s) < eps || (reference != 0.0 && s * reference < 0.0))
            throw std::runtime_error(
                "center placement failed: fan triangle " + std::to_string(t) +
                " is degenerate or inverted; adjust the weight pair");
        if (reference == 0.0) reference = s;
    }
}

} // namespace

Mesh mesh_init(int n_vertices, double radius, double h)
{
    if (n_vertices < 3) throw std::invalid_argument("mesh_init: need at least 3 vertices");
    if (radius <= 0.0) throw std::invalid_argument("mesh_init: radius must be positive");
    std::vector<Point2> rim(n_vertices);
    for (int k = 0; k < n_vertices; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / n_vertices;
        rim[k] = {radius * std::cos(phi), radius * std::sin(phi)};
    }
    Point2 center{0, 0};
    for (const Point2& p : rim) center = center + p;
    center = center / n_vertices;
    Mesh mesh = fan_mesh(rim, center, h);
    check_fan_valid(mesh);
    return mesh;
}

Mesh mesh_init_explicit(const std::vector<Point2>& vertices, double h,
                        std::optional<std::array<double, 2>> weight)
{
    const int n = static_cast<int>(vertices.size());
    if (n < 3) throw std::invalid_argument("mesh_init_explicit: need at least 3 vertices");
    Point2 center{0, 0};
    for (const Point2& p : vertices) center = center + p;
    center = center / n;
    if (weight) {
        // Split vertices by |p|^2 vs |center|^2, distances taken from the
        // superdomain center (0,0), then recombine with the weight pair.
        Point2 far_sum{0, 0}, near_sum{0, 0};
        const double c2 = norm_sq(center);
        for (const Point2& p : vertices) {
            if (norm_sq(p) - c2 >= 0.0)
                far_sum = far_sum + p;
            else
                near_sum = near_sum + p;
        }
        center = ((*weight)[0] * far_sum + (*weight)[1] * near_sum) / n;
    }
    Mesh mesh = fan_mesh(vertices, center, h);
    check_fan_valid(mesh);
    return mesh;
}

BoundaryTable build_boundary_segments(const Mesh& mesh)
{
    BoundaryTable table;
    const std::vector<int> rim = mesh.rim_nodes();
    const int n = static_cast<int>(rim.size());
    table.tol = 1e-5 * mesh.bbox().diag();
    for (int i = 0; i < n; ++i) {
        const int u = rim[i];
        const int v = rim[(i + 1) % n];
        const Point2 p = mesh.points[u];
        const Point2 q = mesh.points[v];
        BoundarySegment seg;
        seg.endpoints = {u, v};
        seg.y_min = std::min(p.y, q.y);
        seg.y_max = std::max(p.y, q.y);
        seg.x_min = std::min(p.x, q.x);
        seg.x_max = std::max(p.x, q.x);
        if (std::abs(p.x - q.x) > table.tol) {
            seg.kind = BoundarySegment::Kind::sloped;
            seg.a = (p.y - q.y) / (p.x - q.x);
            seg.b = p.y - p.x * seg.a;
        } else {
            seg.kind = BoundarySegment::Kind::vertical;
            seg.a = p.x;
        }
        table.segments.push_back(seg);
    }
    return table;
}

bool on_segment(Point2 p, const BoundarySegment& seg, double tol)
{
    if (seg.kind == BoundarySegment::Kind::vertical)
        return std::abs(p.x - seg.a) <= tol && p.y >= seg.y_min - tol && p.y <= seg.y_max + tol;
    return std::abs(p.y - (seg.a * p.x + seg.b)) <= tol && p.x >= seg.x_min - tol &&
           p.x <= seg.x_max + tol;
}

NodeClass classify_node(Point2 p, const BoundaryTable& table)
{
    for (const BoundarySegment& seg : table.segments)
        if (on_segment(p, seg, table.tol)) return NodeClass::boundary;
    return NodeClass::internal;
}

namespace {

std::uint64_t edge_key(int i, int j)
{
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

int add_node(Mesh& mesh, Point2 p)
{
    mesh.points.push_back(p);
    mesh.is_constant.push_back(0);
    mesh.is_boundary.push_back(classify_node(p, mesh.boundary) == NodeClass::boundary ? 1 : 0);
    return mesh.n_points() - 1;
}

} // namespace

RefineResult refine_pass(const Mesh& input)
{
    RefineResult result{input, 0};
    Mesh& mesh = result.mesh;
    const double limit = 1.5 * mesh.prescribed_area;
    const int n_before = mesh.n_elements();
    std::unordered_map<std::uint64_t, int> midpoint_of_edge;

    for (int t = 0; t < n_before; ++t) {
        const std::array<int, 3> tri = mesh.triangles[t];
        const TriangleGeom geom = mesh.tri_geom(t);
        if (geom.area() <= limit) continue;

        int longest = 0;
        double longest_sq = 0.0;
        for (int e = 0; e < 3; ++e) {
            const double len_sq = norm_sq(mesh.points[tri[(e + 1) % 3]] - mesh.points[tri[e]]);
            if (len_sq > longest_sq) {
                longest_sq = len_sq;
                longest = e;
            }
        }
        const int u = tri[longest];
        const int v = tri[(longest + 1) % 3];
        const int w = tri[(longest + 2) % 3];

        const std::uint64_t key = edge_key(u, v);
        auto it = midpoint_of_edge.find(key);
        int mid;
        if (it != midpoint_of_edge.end()) {
            mid = it->second;
        } else {
            mid = add_node(mesh, 0.5 * (mesh.points[u] + mesh.points[v]));
            midpoint_of_edge.emplace(key, mid);
        }

        mesh.triangles[t] = {u, mid, w};
        mesh.triangles.push_back({mid, v, w});
        ++result.count_split;
    }
    return result;
}

namespace {

/// Squared distance from p to the open segment (a, b), along with the segment
/// parameter of the projection.
double point_segment_dist_sq(Point2 p, Point2 a, Point2 b, double& t_out)
{
    const Point2 d = b - a;
    const double len_sq = norm_sq(d);
    if (len_sq == 0.0) {
        t_out = 0.0;
        return norm_sq(p - a);
    }
    const double t = dot(p - a, d) / len_sq;
    t_out = t;
    const Point2 proj = a + t * d;
    return norm_sq(p - proj);
}

/// Finds a node lying strictly inside edge e of triangle t, or -1.
int node_on_edge(const Mesh& mesh, int t, int e, double eps)
{
    const auto& tri = mesh.triangles[t];
    const int u = tri[e], v = tri[(e + 1) % 3], w = tri[(e + 2) % 3];
    const Point2 a = mesh.points[u], b = mesh.points[v];
    const double len = dist(a, b);
    if (len == 0.0) return -1;
    const double t_margin = eps / len;
    for (int k = 0; k < mesh.n_points(); ++k) {
        if (k == u || k == v || k == w) continue;
        double param = 0.0;
        if (point_segment_dist_sq(mesh.points[k], a, b, param) > eps * eps) continue;
        if (param > t_margin && param < 1.0 - t_margin) return k;
    }
    return -1;
}

} // namespace

RepairResult repair_illegal(const Mesh& input)
{
    RepairResult result{input, 0};
    Mesh& mesh = result.mesh;
    const double eps = 1e-12 * mesh.bbox().diag();

    bool changed = true;
    while (changed) {
        changed = false;
        const int n = mesh.n_elements();
        for (int t = 0; t < n; ++t) {
            for (int e = 0; e < 3; ++e) {
                const int k = node_on_edge(mesh, t, e, eps);
                if (k < 0) continue;
                const auto tri = mesh.triangles[t];
                const int u = tri[e], v = tri[(e + 1) % 3], w = tri[(e + 2) % 3];
                mesh.triangles[t] = {u, k, w};
                mesh.triangles.push_back({k, v, w});
                ++result.count_repaired;
                changed = true;
                break;
            }
        }
    }
    return result;
}

MeshQuality quality(const Mesh& mesh)
{
    MeshQuality q;
    q.n_points = mesh.n_points();
    q.n_elements = mesh.n_elements();
    const double s = mesh.prescribed_area;
    double mean = 0.0, var = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const double area = mesh.tri_geom(t).area();
        mean += area / s;
        var += std::abs(area - s) / s;
    }
    if (mesh.n_elements() > 0) {
        mean /= mesh.n_elements();
        var /= mesh.n_elements();
    }
    q.mean_normalized_area = mean;
    q.area_variation = var;
    return q;
}

namespace {

bool point_strictly_inside(const TriangleGeom& tri, Point2 p, double eps_coord)
{
    const AreaCoords c = area_coords(tri, p);
    return c.l1 > eps_coord && c.l2 > eps_coord && c.l3 > eps_coord;
}

bool segments_properly_cross(Point2 a, Point2 b, Point2 c, Point2 d)
{
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

} // namespace

bool audit_conforming(const Mesh& mesh, std::string* why)
{
    const auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const double eps = degeneracy_eps(mesh.bbox().diag_sq());
    const int m = mesh.n_elements();

    std::unordered_map<std::uint64_t, int> edge_count;
    for (int t = 0; t < m; ++t) {
        const auto& tri = mesh.triangles[t];
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            return fail("triangle " + std::to_string(t) + " repeats a node");
        for (int v : tri)
            if (v < 0 || v >= mesh.n_points())
                return fail("triangle " + std::to_string(t) + " references invalid node");
        if (mesh.tri_geom(t).area() < eps)
            return fail("triangle " + std::to_string(t) + " is degenerate");
        for (int e = 0; e < 3; ++e) ++edge_count[edge_key(tri[e], tri[(e + 1) % 3])];
    }
    for (const auto& [key, count] : edge_count)
        if (count > 2)
            return fail("edge shared by more than two triangles");

    for (int s = 0; s < m; ++s) {
        const TriangleGeom gs = mesh.tri_geom(s);
        for (int t = s + 1; t < m; ++t) {
            const auto& a = mesh.triangles[s];
            const auto& b = mesh.triangles[t];
            int shared = 0;
            for (int i : a)
                for (int j : b)
                    if (i == j) ++shared;
            if (shared >= 3)
                return fail("triangles " + std::to_string(s) + "," + std::to_string(t) +
                            " are duplicates");
            // Sharing two nodes is a full shared edge. Beyond the shared
            // topology, interiors must not overlap: no vertex strictly inside
            // the other triangle and no proper edge crossings.
            const TriangleGeom gt = mesh.tri_geom(t);
            for (int j : b) {
                bool is_shared = (j == a[0] || j == a[1] || j == a[2]);
                if (!is_shared && point_strictly_inside(gs, mesh.points[j], 1e-12))
                    return fail("node inside triangle " + std::to_string(s));
            }
            for (int i : a) {
                bool is_shared = (i == b[0] || i == b[1] || i == b[2]);
                if (!is_shared && point_strictly_inside(gt, mesh.points[i], 1e-12))
                    return fail("node inside triangle " + std::to_string(t));
            }
            for (int ea = 0; ea < 3; ++ea) {
                const int a0 = a[ea], a1 = a[(ea + 1) % 3];
                for (int eb = 0; eb < 3; ++eb) {
                    const int b0 = b[eb], b1 = b[(eb + 1) % 3];
                    if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) continue;
                    if (segments_properly_cross(mesh.points[a0], mesh.points[a1],
                                                mesh.points[b0], mesh.points[b1]))
                        return fail("edges of triangles " + std::to_string(s) + "," +
                                    std::to_string(t) + " cross");
                }
            }
        }
    }
    return true;
}

bool audit_no_illegal(const Mesh& mesh, std::string* why)
{
    const double eps = 1e-12 * mesh.bbox().diag();
    for (int t = 0; t < mesh.n_elements(); ++t) {
        for (int e = 0; e < 3; ++e) {
            const int k = node_on_edge(mesh, t, e, eps);
            if (k >= 0) {
                if (why)
                    *why = "node " + std::to_string(k) + " lies on an edge of triangle " +
                           std::to_string(t);
                return false;
            }
        }
    }
    return true;
}

} // namespace metromesh
