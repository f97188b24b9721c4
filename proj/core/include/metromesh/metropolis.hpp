#ifndef METROMESH_METROPOLIS_HPP
#define METROMESH_METROPOLIS_HPP

#include <cstdint>
#include <random>

#include "metromesh/mesh.hpp"

namespace metromesh {

struct MetropolisParams {
    double force = 0.1;
    double temperature = 0.01;
    /// Stop when a full sweep's total accepted |dE| falls below this; values
    /// <= 0 select the default 1e-8 * A^2 * n_points.
    double tolerance = 0.0;
    int max_sweeps = 10000;
    std::uint64_t seed = 1;
};

struct SweepReport {
    int sweeps_run = 0;
    long moves_proposed = 0;
    long accepted_downhill = 0;
    long accepted_metropolis = 0;
    double final_energy = 0.0;
};

/// Uniform draw on (0, 1].
inline double uniform_unit(std::mt19937_64& rng)
{
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Downhill moves pass outright; otherwise exp(-dE/T) > r with r uniform on
/// the unit interval. A draw is consumed only on the dE >= 0 branch.
inline bool metropolis_accept(double dE, double temperature, std::mt19937_64& rng)
{
    if (dE < 0.0) return true;
    return std::exp(-dE / temperature) > uniform_unit(rng);
}

/// Sum of squared area deviations from the prescribed element area over the
/// triangles incident to the node.
double node_energy(const Mesh& mesh, int node);

/// Same deviation measure summed over the whole mesh.
double mesh_energy(const Mesh& mesh);

/// Force-directed position update from all connected neighbours:
/// p_new = p - sum_j F (|r_ji| - h) r_ji / |r_ji| with r_ji = p_i - p_j.
/// Throws std::runtime_error("coincident nodes") on a zero-length edge.
Point2 propose_internal(const Mesh& mesh, int node, const MetropolisParams& params);

/// Boundary variant: the force comes from only the two boundary neighbours
/// aligned with the node on one of its segments, and the result is projected
/// onto the segment line and clamped to the endpoint range. Throws
/// std::runtime_error("boundary adjacency broken") when no aligned pair
/// satisfies any segment equation.
Point2 propose_boundary(const Mesh& mesh, int node, const BoundaryTable& table,
                        const MetropolisParams& params);

struct MetropolisResult {
    Mesh mesh;
    SweepReport report;
};

/// Sweeps over all movable nodes (internal then boundary, ascending index)
/// until a full sweep's accepted energy change drops below the tolerance or
/// max_sweeps is reached. Moves that invert or degenerate an incident
/// triangle are rejected before any energy accounting.
MetropolisResult metropolis_sweeps(const Mesh& mesh, const MetropolisParams& params,
                                   const BoundaryTable& table);

} // namespace metromesh

#endif
