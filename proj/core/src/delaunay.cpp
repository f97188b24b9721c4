#include "metromesh/delaunay.hpp"

#include <algorithm>
#include <unordered_map>

namespace metromesh {

namespace {

std::uint64_t edge_key(int i, int j)
{
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

struct EdgeUse {
    int tri[2]{-1, -1};

    void add(int t)
    {
        if (tri[0] < 0)
            tri[0] = t;
        else if (tri[1] < 0)
            tri[1] = t;
        else
            throw std::runtime_error("non-conforming mesh: edge shared by more than two triangles");
    }
    void replace(int from, int to)
    {
        if (tri[0] == from)
            tri[0] = to;
        else if (tri[1] == from)
            tri[1] = to;
    }
    int other(int t) const { return tri[0] == t ? tri[1] : tri[0]; }
};

using EdgeMap = std::unordered_map<std::uint64_t, EdgeUse>;

EdgeMap build_edge_map(const Mesh& mesh)
{
    EdgeMap map;
    map.reserve(mesh.triangles.size() * 2);
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) map[edge_key(tri[e], tri[(e + 1) % 3])].add(t);
    }
    return map;
}

int opposite_vertex(const std::array<int, 3>& tri, int u, int v)
{
    for (int k : tri)
        if (k != u && k != v) return k;
    return -1;
}

bool strictly_convex_quad(Point2 a, Point2 b, Point2 c, Point2 d, double eps_area)
{
    const Point2 p[4] = {a, b, c, d};
    double reference = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double z = cross(p[(i + 1) % 4] - p[i], p[(i + 2) % 4] - p[(i + 1) % 4]);
        if (std::abs(z) < eps_area || (reference != 0.0 && z * reference < 0.0)) return false;
        if (reference == 0.0) reference = z;
    }
    return true;
}

struct FlipContext {
    Mesh& mesh;
    EdgeMap& edges;
    double eps_incircle;
    double eps_area;
    FlipStats& stats;
};

/// Attempts to exchange the edge shared by triangles t and n for the opposite
/// diagonal, given that z (the vertex of n opposite the shared edge) violates
/// the circumcircle of t. Returns true when the mesh changed.
bool try_flip(FlipContext& ctx, int t, int n, int u, int v, int z, double d_old)
{
    Mesh& mesh = ctx.mesh;
    const int w = opposite_vertex(mesh.triangles[t], u, v);
    if (w < 0 || z < 0) return false;

    // Quad perimeter in order u, w, v, z; the flip replaces diagonal (u, v)
    // by (w, z), which only tiles the quad when it is strictly convex.
    if (!strictly_convex_quad(mesh.points[u], mesh.points[w], mesh.points[v], mesh.points[z],
                              ctx.eps_area)) {
        ++ctx.stats.flips_rejected;
        return false;
    }

    const TriangleGeom new_t(mesh.points[u], mesh.points[w], mesh.points[z]);
    const TriangleGeom new_n(mesh.points[w], mesh.points[v], mesh.points[z]);
    if (new_t.area() < ctx.eps_area || new_n.area() < ctx.eps_area) {
        ++ctx.stats.flips_rejected;
        return false;
    }

    // Accept only when the determinant against the remaining quad vertex
    // strictly improves over the violated one.
    const double d_new = in_circumcircle(new_t, mesh.points[v]);
    if (!(d_new > d_old)) {
        ++ctx.stats.flips_rejected;
        return false;
    }

    mesh.triangles[t] = {u, w, z};
    mesh.triangles[n] = {w, v, z};
    ctx.edges.erase(edge_key(u, v));
    ctx.edges[edge_key(w, z)] = EdgeUse{{t, n}};
    ctx.edges[edge_key(w, v)].replace(t, n);
    ctx.edges[edge_key(z, u)].replace(n, t);
    ++ctx.stats.flips_accepted;
    return true;
}

/// One flip attempt for triangle t against the opposite vertex across local
/// edge e. Returns true when a flip happened.
bool process_edge(FlipContext& ctx, int t, int e)
{
    const auto tri = ctx.mesh.triangles[t];
    const int u = tri[e], v = tri[(e + 1) % 3];
    const auto it = ctx.edges.find(edge_key(u, v));
    if (it == ctx.edges.end()) return false;
    const int n = it->second.other(t);
    if (n < 0) return false;
    const int z = opposite_vertex(ctx.mesh.triangles[n], u, v);
    if (z < 0) return false;

    const double d_old = in_circumcircle(ctx.mesh.tri_geom(t), ctx.mesh.points[z]);
    if (d_old >= -ctx.eps_incircle) return false;
    return try_flip(ctx, t, n, u, v, z, d_old);
}

} // namespace

DelaunayResult delaunay_optimize(const Mesh& input, DelaunayOptions options)
{
    DelaunayResult result{input, {}};
    Mesh& mesh = result.mesh;
    const BBox box = mesh.bbox();
    const double diag_sq = box.diag_sq();
    const double eps_incircle = 1e-10 * diag_sq * diag_sq;
    const double eps_area = degeneracy_eps(diag_sq);

    EdgeMap edges = build_edge_map(mesh);
    FlipContext ctx{mesh, edges, eps_incircle, eps_area, result.stats};

    while (result.stats.passes < options.max_passes) {
        ++result.stats.passes;
        int flips_this_pass = 0;

        for (int t = 0; t < mesh.n_elements(); ++t) {
            // A flip changes triangle t, so re-examine it until no candidate
            // violates; termination follows from each accepted flip strictly
            // improving the determinant.
            bool flipped = true;
            int guard = 0;
            while (flipped && guard++ < 64) {
                flipped = false;
                if (options.full_scan) {
                    for (int p = 0; p < mesh.n_points() && !flipped; ++p) {
                        const auto& tri = mesh.triangles[t];
                        if (p == tri[0] || p == tri[1] || p == tri[2]) continue;
                        for (int e = 0; e < 3 && !flipped; ++e) {
                            const int u = tri[e], v = tri[(e + 1) % 3];
                            const auto it = edges.find(edge_key(u, v));
                            if (it == edges.end()) continue;
                            const int n = it->second.other(t);
                            if (n < 0 || opposite_vertex(mesh.triangles[n], u, v) != p) continue;
                            if (process_edge(ctx, t, e)) flipped = true;
                        }
                    }
                } else {
                    // Candidates ordered by opposite point index.
                    std::array<std::pair<int, int>, 3> cand;
                    int n_cand = 0;
                    const auto& tri = mesh.triangles[t];
                    for (int e = 0; e < 3; ++e) {
                        const auto it = edges.find(edge_key(tri[e], tri[(e + 1) % 3]));
                        if (it == edges.end()) continue;
                        const int n = it->second.other(t);
                        if (n < 0) continue;
                        const int z = opposite_vertex(mesh.triangles[n], tri[e], tri[(e + 1) % 3]);
                        cand[n_cand++] = {z, e};
                    }
                    std::sort(cand.begin(), cand.begin() + n_cand);
                    for (int i = 0; i < n_cand && !flipped; ++i)
                        if (process_edge(ctx, t, cand[i].second)) flipped = true;
                }
                if (flipped) ++flips_this_pass;
            }
        }
        if (flips_this_pass == 0) break;
    }
    return result;
}

bool audit_delaunay(const Mesh& mesh, double* worst_violation)
{
    const double diag_sq = mesh.bbox().diag_sq();
    const double eps = 1e-10 * diag_sq * diag_sq;
    double worst = 0.0;
    bool ok = true;

    std::unordered_map<std::uint64_t, EdgeUse> edges;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) edges[edge_key(tri[e], tri[(e + 1) % 3])].add(t);
    }
    for (const auto& [key, use] : edges) {
        if (use.tri[0] < 0 || use.tri[1] < 0) continue;
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        for (int side = 0; side < 2; ++side) {
            const int t = use.tri[side];
            const int o = use.tri[1 - side];
            const int z = opposite_vertex(mesh.triangles[o], u, v);
            const double d = in_circumcircle(mesh.tri_geom(t), mesh.points[z]);
            if (d < -eps) {
                ok = false;
                worst = std::min(worst, d);
            }
        }
    }
    if (worst_violation) *worst_violation = worst;
    return ok;
}

} // namespace metromesh
