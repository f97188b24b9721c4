// Command-line front end: mesh generation, Poisson/Laplace solving,
// validation against the analytic references, and SVG rendering.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "metromesh/mesh_io.hpp"
#include "metromesh/pipeline.hpp"
#include "metromesh/problems.hpp"
#include "metromesh/render.hpp"

namespace {

using namespace metromesh;

std::vector<Point2> read_vertices_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vertices file: " + path);
    std::vector<Point2> vertices;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x, y;
        if (row >> x >> y) vertices.push_back({x, y});
    }
    if (vertices.size() < 3)
        throw std::runtime_error("vertices file needs at least 3 'x y' lines");
    return vertices;
}

std::array<double, 2> parse_weight(const std::string& text)
{
    std::array<double, 2> w{};
    char extra;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &w[0], &w[1], &extra) != 2)
        throw std::runtime_error("--weight expects 'w1,w2'");
    return w;
}

CoefficientFields fields_for(const std::string& problem, double phi0, double tol)
{
    if (problem == "rect-laplace") return rect_laplace_fields(phi0, tol);
    if (problem == "circle-poisson") return circle_poisson_fields();
    throw std::runtime_error("unknown problem: " + problem);
}

std::function<double(Point2)> reference_for(const std::string& problem, double phi0,
                                            int series_terms)
{
    if (problem == "rect-laplace") {
        RectLaplaceSpec spec{phi0, series_terms};
        return [spec](Point2 p) { return rect_series(p, spec); };
    }
    return [](Point2 p) { return circle_exact(p); };
}

struct CommonArgs {
    std::string shape = "regular-polygon";
    int n_vertices = 4;
    double radius = 1.0;
    std::string vertices_file;
    std::string weight_text;
    double h = 0.1;
    int divisions = 16;
    bool no_delaunay = false;
    bool no_metropolis = false;
    bool post_delaunay = false;
    MetropolisParams metro;

    GenerateOptions to_options() const
    {
        GenerateOptions opt;
        if (shape == "regular-polygon") {
            opt.n_vertices = n_vertices;
            opt.radius = radius;
        } else if (shape == "circle16") {
            opt.n_vertices = 16;
            opt.radius = 1.0;
        } else if (shape == "rectangle") {
            opt.vertices = {{-1, 0}, {1, 0}, {1, 1}, {-1, 1}};
        } else if (shape == "explicit-vertices") {
            opt.vertices = read_vertices_file(vertices_file);
        } else {
            throw std::runtime_error("unknown shape: " + shape);
        }
        if (!weight_text.empty()) opt.weight = parse_weight(weight_text);
        opt.h = h;
        opt.divisions_cap = divisions;
        opt.use_delaunay = !no_delaunay;
        opt.use_metropolis = !no_metropolis;
        opt.post_delaunay = post_delaunay;
        opt.metropolis = metro;
        return opt;
    }
};

void add_generate_flags(CLI::App* cmd, CommonArgs& args)
{
    cmd->set_help_flag("--help", "Print help"); // frees -h for the element size
    cmd->add_option("--shape", args.shape, "Domain shape")
        ->check(CLI::IsMember({"regular-polygon", "explicit-vertices", "rectangle", "circle16"}));
    cmd->add_option("--n", args.n_vertices, "Vertex count for regular-polygon");
    cmd->add_option("--radius", args.radius, "Circumscribed-circle radius for regular-polygon");
    cmd->add_option("--vertices-file", args.vertices_file,
                    "Polygon vertex list, one 'x y' per line");
    cmd->add_option("--weight", args.weight_text,
                    "Center-shift weight pair 'w1,w2' for non-convex shapes");
    cmd->add_option("--h", args.h, "Prescribed element size")->check(CLI::PositiveNumber);
    cmd->add_option("--divisions", args.divisions, "Cap on division rounds");
    cmd->add_flag("--no-delaunay", args.no_delaunay, "Skip the Delaunay reconfiguration");
    cmd->add_flag("--no-metropolis", args.no_metropolis, "Skip the Metropolis node shifting");
    cmd->add_flag("--post-delaunay", args.post_delaunay,
                  "Extra Delaunay pass after each Metropolis stage");
    cmd->add_option("--force", args.metro.force, "Metropolis force strength");
    cmd->add_option("--temperature", args.metro.temperature, "Metropolis temperature");
    cmd->add_option("--sweeps", args.metro.max_sweeps, "Metropolis sweep cap per stage");
    cmd->add_option("--seed", args.metro.seed, "RNG seed")->envname("METROMESH_SEED");
}

int cmd_generate(const CommonArgs& args, const std::string& out_path)
{
    const GenerateResult result = generate_mesh(args.to_options());
    write_mesh_file(out_path, result.mesh);
    const MeshQuality& q = result.report.quality;
    std::printf("n_points=%d n_elements=%d S_N_mean=%.6g S_var=%.6g divisions=%d\n", q.n_points,
                q.n_elements, q.mean_normalized_area, q.area_variation,
                result.report.divisions_run);
    return 0;
}

int cmd_solve(const std::string& mesh_path, const std::string& problem, double phi0,
              int quad_order, const std::string& out_path)
{
    const Mesh mesh = read_mesh_file(mesh_path);
    const CoefficientFields fields = fields_for(problem, phi0, mesh.boundary.tol);
    const QuadratureRule rule = quadrature_rule(quad_order);
    const LinearSystem raw = assemble(mesh, fields, rule);
    const LinearSystem constrained = apply_dirichlet(raw, mesh, fields.gamma);
    const Eigen::VectorXd phi = solve(constrained);

    std::vector<double> values(phi.data(), phi.data() + phi.size());
    write_solution_csv_file(out_path, mesh, values);

    const double rhs_norm = constrained.rhs.norm();
    const double residual = (constrained.matrix * phi - constrained.rhs).norm() /
                            (rhs_norm > 0.0 ? rhs_norm : 1.0);
    std::printf("n_unknowns=%d residual=%.3e\n", mesh.n_points(), residual);
    return 0;
}

int cmd_validate(const std::string& mesh_path, const std::string& solution_path,
                 const std::string& problem, double phi0, int series_terms, bool include_corners,
                 const std::string& out_path)
{
    const Mesh mesh = read_mesh_file(mesh_path);
    const std::vector<double> phi = read_solution_csv_file(solution_path);
    const auto reference = reference_for(problem, phi0, series_terms);

    std::vector<int> excluded;
    if (problem == "rect-laplace" && !include_corners)
        excluded = conflicting_corner_nodes(mesh, mesh.boundary.tol);

    const ErrorReport report = compare(mesh, phi, reference, excluded);
    if (!out_path.empty()) {
        std::vector<double> ref_values(mesh.n_points());
        for (int i = 0; i < mesh.n_points(); ++i) ref_values[i] = reference(mesh.points[i]);
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
        write_error_csv(out, mesh, phi, ref_values, report.nodewise_errors);
    }
    std::printf("max_abs_error=%.6g argmax_node=%d h=%.6g n_points=%d excluded=%zu\n",
                report.max_abs_error, report.argmax_node, report.h_used, mesh.n_points(),
                excluded.size());
    return 0;
}

int cmd_render(const std::string& mesh_path, const std::string& solution_path,
               const std::string& color_by, const std::string& problem, double phi0,
               int series_terms, const std::string& out_path)
{
    const Mesh mesh = read_mesh_file(mesh_path);
    RenderOptions options;
    if (!solution_path.empty()) {
        std::vector<double> phi = read_solution_csv_file(solution_path);
        if (static_cast<int>(phi.size()) != mesh.n_points())
            throw std::runtime_error("solution and mesh node counts differ");
        if (color_by == "error") {
            if (problem.empty())
                throw std::runtime_error("--color-by error requires --problem");
            const auto reference = reference_for(problem, phi0, series_terms);
            for (int i = 0; i < mesh.n_points(); ++i)
                phi[i] = std::abs(phi[i] - reference(mesh.points[i]));
            options.value_label = "|error|";
        }
        options.values = std::move(phi);
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    render_svg(out, mesh, options);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Metropolis-optimized triangular meshes and a linear-triangle Poisson solver"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print help");
    app.set_config("--config", "", "Key-value config file; command-line flags win");

    CommonArgs gen_args;
    std::string out_path, mesh_path, solution_path;
    std::string problem = "rect-laplace";
    double phi0 = 1.0;
    int series_terms = 200;
    int quad_order = 3;
    bool include_corners = false;
    std::string color_by = "solution";

    CLI::App* generate = app.add_subcommand("generate", "Generate an optimized mesh");
    add_generate_flags(generate, gen_args);
    generate->add_option("--out", out_path, "Output mesh file")->required();

    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem on a mesh");
    solve_cmd->add_option("--mesh", mesh_path, "Input mesh file")->required();
    solve_cmd->add_option("--problem", problem, "Benchmark problem")
        ->check(CLI::IsMember({"rect-laplace", "circle-poisson"}));
    solve_cmd->add_option("--phi0", phi0, "Side boundary value for rect-laplace");
    solve_cmd->add_option("--quadrature", quad_order, "Quadrature order (1 or 3)")
        ->check(CLI::IsMember({1, 3}));
    solve_cmd->add_option("--out", out_path, "Output solution CSV")->required();

    CLI::App* validate = app.add_subcommand("validate", "Compare a solution with the reference");
    validate->add_option("--mesh", mesh_path, "Input mesh file")->required();
    validate->add_option("--solution", solution_path, "Solution CSV")->required();
    validate->add_option("--problem", problem, "Benchmark problem")
        ->check(CLI::IsMember({"rect-laplace", "circle-poisson"}));
    validate->add_option("--phi0", phi0, "Side boundary value for rect-laplace");
    validate->add_option("--series-terms", series_terms, "Series truncation for the reference");
    validate->add_flag("--include-corners", include_corners,
                       "Keep the conflicting rectangle corners in the maximum");
    validate->add_option("--out", out_path, "Optional error CSV");

    CLI::App* render = app.add_subcommand("render", "Render a mesh (and solution) as SVG");
    render->add_option("--mesh", mesh_path, "Input mesh file")->required();
    render->add_option("--solution", solution_path, "Optional solution CSV to color by");
    render->add_option("--color-by", color_by, "solution or error")
        ->check(CLI::IsMember({"solution", "error"}));
    render->add_option("--problem", problem, "Problem for --color-by error")
        ->check(CLI::IsMember({"rect-laplace", "circle-poisson"}));
    render->add_option("--phi0", phi0, "Side boundary value for rect-laplace");
    render->add_option("--series-terms", series_terms, "Series truncation for the reference");
    render->add_option("--out", out_path, "Output SVG file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_args, out_path);
        if (solve_cmd->parsed()) return cmd_solve(mesh_path, problem, phi0, quad_order, out_path);
        if (validate->parsed())
            return cmd_validate(mesh_path, solution_path, problem, phi0, series_terms,
                                include_corners, out_path);
        if (render->parsed())
            return cmd_render(mesh_path, solution_path, color_by,
                              render->count("--problem") ? problem : "", phi0, series_terms,
                              out_path);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
