#include "metromesh/metropolis.hpp"

#include <algorithm>
#include <cmath>

namespace metromesh {

namespace {

struct Adjacency {
    std::vector<std::vector<int>> node_triangles;
    std::vector<std::vector<int>> node_neighbors; // sorted, unique
};

Adjacency build_adjacency(const Mesh& mesh)
{
    Adjacency adj;
    adj.node_triangles.resize(mesh.n_points());
    adj.node_neighbors.resize(mesh.n_points());
    for (int t = 0; t < mesh.n_elements(); ++t) {
        for (int e = 0; e < 3; ++e) {
            const int i = mesh.triangles[t][e];
            adj.node_triangles[i].push_back(t);
            adj.node_neighbors[i].push_back(mesh.triangles[t][(e + 1) % 3]);
            adj.node_neighbors[i].push_back(mesh.triangles[t][(e + 2) % 3]);
        }
    }
    for (auto& nb : adj.node_neighbors) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return adj;
}

Point2 force_step(const std::vector<Point2>& points, int node, const std::vector<int>& neighbors,
                  double force, double h)
{
    const Point2 p = points[node];
    Point2 shift{0, 0};
    for (int j : neighbors) {
        const Point2 r = p - points[j];
        const double len = norm(r);
        if (len == 0.0) throw std::runtime_error("coincident nodes");
        shift = shift + force * (len - h) * (r / len);
    }
    return p - shift;
}

/// The two boundary neighbours that lie with the node on a common segment,
/// plus that segment's index.
struct AlignedPair {
    int j1 = -1, j2 = -1, segment = -1;
};

AlignedPair find_aligned_pair(const std::vector<Point2>& points,
                              const std::vector<std::uint8_t>& is_boundary, int node,
                              const std::vector<int>& neighbors, const BoundaryTable& table)
{
    std::vector<int> boundary_neighbors;
    for (int j : neighbors)
        if (is_boundary[j]) boundary_neighbors.push_back(j);

    const Point2 p = points[node];
    const int nb = static_cast<int>(boundary_neighbors.size());
    for (int a = 0; a < nb; ++a) {
        for (int b = a + 1; b < nb; ++b) {
            const Point2 pa = points[boundary_neighbors[a]];
            const Point2 pb = points[boundary_neighbors[b]];
            for (int s = 0; s < static_cast<int>(table.segments.size()); ++s) {
                const BoundarySegment& seg = table.segments[s];
                if (on_segment(p, seg, table.tol) && on_segment(pa, seg, table.tol) &&
                    on_segment(pb, seg, table.tol))
                    return {boundary_neighbors[a], boundary_neighbors[b], s};
            }
        }
    }
    throw std::runtime_error("boundary adjacency broken: no aligned neighbour pair for node " +
                             std::to_string(node));
}

Point2 project_to_segment(Point2 p, const BoundarySegment& seg, const std::vector<Point2>& points)
{
    const Point2 e0 = points[seg.endpoints[0]];
    const Point2 e1 = points[seg.endpoints[1]];
    const Point2 d = e1 - e0;
    const double len_sq = norm_sq(d);
    if (len_sq == 0.0) return e0;
    double t = dot(p - e0, d) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return e0 + t * d;
}

} // namespace

double node_energy(const Mesh& mesh, int node)
{
    if (node < 0 || node >= mesh.n_points()) throw std::invalid_argument("node_energy: bad node");
    double e = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        if (tri[0] != node && tri[1] != node && tri[2] != node) continue;
        const double d = mesh.tri_geom(t).area() - mesh.prescribed_area;
        e += d * d;
    }
    return e;
}

double mesh_energy(const Mesh& mesh)
{
    double e = 0.0;
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const double d = mesh.tri_geom(t).area() - mesh.prescribed_area;
        e += d * d;
    }
    return e;
}

Point2 propose_internal(const Mesh& mesh, int node, const MetropolisParams& params)
{
    if (mesh.is_boundary[node]) throw std::invalid_argument("propose_internal: boundary node");
    const Adjacency adj = build_adjacency(mesh);
    return force_step(mesh.points, node, adj.node_neighbors[node], params.force,
                      mesh.element_size_h);
}

Point2 propose_boundary(const Mesh& mesh, int node, const BoundaryTable& table,
                        const MetropolisParams& params)
{
    if (!mesh.is_boundary[node] || mesh.is_constant[node])
        throw std::invalid_argument("propose_boundary: node is not a movable boundary node");
    const Adjacency adj = build_adjacency(mesh);
    const AlignedPair pair = find_aligned_pair(mesh.points, mesh.is_boundary, node,
                                               adj.node_neighbors[node], table);
    const std::vector<int> two{pair.j1, pair.j2};
    const Point2 raw = force_step(mesh.points, node, two, params.force, mesh.element_size_h);
    return project_to_segment(raw, table.segments[pair.segment], mesh.points);
}

MetropolisResult metropolis_sweeps(const Mesh& input, const MetropolisParams& params,
                                   const BoundaryTable& table)
{
    if (params.force <= 0.0) throw std::invalid_argument("metropolis: force must be positive");
    if (params.temperature <= 0.0)
        throw std::invalid_argument("metropolis: temperature must be positive");
    if (params.max_sweeps < 1) throw std::invalid_argument("metropolis: max_sweeps must be >= 1");

    MetropolisResult result{input, {}};
    Mesh& mesh = result.mesh;
    const double area = mesh.prescribed_area;
    const double tolerance = params.tolerance > 0.0
                                 ? params.tolerance
                                 : 1e-8 * area * area * mesh.n_points();
    const double eps_area = degeneracy_eps(mesh.bbox().diag_sq());
    const Adjacency adj = build_adjacency(mesh);

    std::vector<int> internal_nodes, boundary_nodes;
    for (int i = 0; i < mesh.n_points(); ++i) {
        if (!mesh.is_boundary[i])
            internal_nodes.push_back(i);
        else if (!mesh.is_constant[i])
            boundary_nodes.push_back(i);
    }

    // Connectivity is fixed during sweeps and nodes only slide along their
    // segments, so the aligned pair of each boundary node is stable.
    std::vector<AlignedPair> pair_of(mesh.n_points());
    for (int i : boundary_nodes)
        pair_of[i] = find_aligned_pair(mesh.points, mesh.is_boundary, i, adj.node_neighbors[i],
                                       table);

    std::mt19937_64 rng(params.seed);

    const auto local_energy = [&](int node) {
        double e = 0.0;
        for (int t : adj.node_triangles[node]) {
            const double d = mesh.tri_geom(t).area() - area;
            e += d * d;
        }
        return e;
    };

    const auto incident_ok = [&](int node, const std::vector<double>& signs_before) {
        for (std::size_t k = 0; k < adj.node_triangles[node].size(); ++k) {
            const double s = mesh.tri_geom(adj.node_triangles[node][k]).signed_area();
            if (std::abs(s) < eps_area || s * signs_before[k] < 0.0) return false;
        }
        return true;
    };

    std::vector<double> signs_before;
    const auto visit = [&](int node, bool boundary) {
        ++result.report.moves_proposed;
        Point2 proposal;
        if (boundary) {
            const AlignedPair& pair = pair_of[node];
            const std::vector<int> two{pair.j1, pair.j2};
            const Point2 raw =
                force_step(mesh.points, node, two, params.force, mesh.element_size_h);
            proposal = project_to_segment(raw, table.segments[pair.segment], mesh.points);
        } else {
            proposal = force_step(mesh.points, node, adj.node_neighbors[node], params.force,
                                  mesh.element_size_h);
        }

        signs_before.clear();
        for (int t : adj.node_triangles[node])
            signs_before.push_back(mesh.tri_geom(t).signed_area());

        const double e_before = local_energy(node);
        const Point2 saved = mesh.points[node];
        mesh.points[node] = proposal;

        if (!incident_ok(node, signs_before)) {
            mesh.points[node] = saved;
            return 0.0;
        }
        const double dE = local_energy(node) - e_before;
        if (metropolis_accept(dE, params.temperature, rng)) {
            if (dE < 0.0)
                ++result.report.accepted_downhill;
            else
                ++result.report.accepted_metropolis;
            return std::abs(dE);
        }
        mesh.points[node] = saved;
        return 0.0;
    };

    for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
        ++result.report.sweeps_run;
        double accepted_change = 0.0;
        for (int node : internal_nodes) accepted_change += visit(node, false);
        for (int node : boundary_nodes) accepted_change += visit(node, true);
        if (accepted_change < tolerance) break;
    }
    result.report.final_energy = mesh_energy(mesh);
    return result;
}

} // namespace metromesh
