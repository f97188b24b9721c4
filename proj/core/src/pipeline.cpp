#include "metromesh/pipeline.hpp"

namespace metromesh {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

GenerateResult generate_mesh(const GenerateOptions& options)
{
    const auto hook = [&](const char* stage, const Mesh& mesh) {
        if (options.stage_hook) options.stage_hook(stage, mesh);
    };

    GenerateResult result;
    result.mesh = options.vertices.empty()
                      ? mesh_init(options.n_vertices, options.radius, options.h)
                      : mesh_init_explicit(options.vertices, options.h, options.weight);
    hook("init", result.mesh);

    for (int round = 1; round <= options.divisions_cap; ++round) {
        RefineResult refined = refine_pass(result.mesh);
        if (refined.count_split == 0) break;
        result.report.divisions_run = round;
        result.report.total_splits += refined.count_split;
        result.mesh = std::move(refined.mesh);
        hook("refine", result.mesh);

        RepairResult repaired = repair_illegal(result.mesh);
        result.report.total_repairs += repaired.count_repaired;
        result.mesh = std::move(repaired.mesh);
        hook("repair", result.mesh);

        if (options.use_delaunay) {
            DelaunayResult flipped = delaunay_optimize(result.mesh);
            result.report.flips.passes += flipped.stats.passes;
            result.report.flips.flips_accepted += flipped.stats.flips_accepted;
            result.report.flips.flips_rejected += flipped.stats.flips_rejected;
            result.mesh = std::move(flipped.mesh);
            hook("delaunay", result.mesh);
        }
        if (options.use_metropolis) {
            MetropolisParams params = options.metropolis;
            params.seed = splitmix64(options.metropolis.seed ^ static_cast<std::uint64_t>(round));
            MetropolisResult moved = metropolis_sweeps(result.mesh, params, result.mesh.boundary);
            result.report.metropolis_sweeps_run += moved.report.sweeps_run;
            result.mesh = std::move(moved.mesh);
            hook("metropolis", result.mesh);
        }
        if (options.post_delaunay) {
            DelaunayResult flipped = delaunay_optimize(result.mesh);
            result.report.flips.passes += flipped.stats.passes;
            result.report.flips.flips_accepted += flipped.stats.flips_accepted;
            result.report.flips.flips_rejected += flipped.stats.flips_rejected;
            result.mesh = std::move(flipped.mesh);
            hook("post-delaunay", result.mesh);
        }
    }

    result.report.quality = quality(result.mesh);
    return result;
}

} // namespace metromesh
