#ifndef METROMESH_PIPELINE_HPP
#define METROMESH_PIPELINE_HPP

#include <functional>
#include <optional>

#include "metromesh/delaunay.hpp"
#include "metromesh/mesh.hpp"
#include "metromesh/metropolis.hpp"

namespace metromesh {

struct GenerateOptions {
    /// Regular polygon domain (used when vertices is empty).
    int n_vertices = 4;
    double radius = 1.0;
    /// Explicit polygon domain; takes precedence when non-empty.
    std::vector<Point2> vertices;
    std::optional<std::array<double, 2>> weight;

    double h = 0.1;
    int divisions_cap = 16;
    bool use_delaunay = true;
    bool use_metropolis = true;
    /// One extra Delaunay pass after each Metropolis stage (stability
    /// perturbation experiment).
    bool post_delaunay = false;
    MetropolisParams metropolis;

    /// Observer invoked after every pipeline stage with a stage tag.
    std::function<void(const char*, const Mesh&)> stage_hook;
};

struct GenerateReport {
    int divisions_run = 0;
    int total_splits = 0;
    int total_repairs = 0;
    FlipStats flips;
    long metropolis_sweeps_run = 0;
    MeshQuality quality;
};

struct GenerateResult {
    Mesh mesh;
    GenerateReport report;
};

/// Full generation pipeline: fan mesh, then division rounds of longest-bar
/// splitting + illegal repair, each followed by the enabled optimizations
/// (Delaunay reconfiguration first, Metropolis node shifting second). Stops
/// at the divisions cap or when a round splits nothing.
GenerateResult generate_mesh(const GenerateOptions& options);

} // namespace metromesh

#endif
