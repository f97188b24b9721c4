#include "metromesh/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace metromesh {

namespace {

std::string fmt_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void bad_format(const std::string& what)
{
    throw std::runtime_error("mesh format error: " + what);
}

} // namespace

void write_mesh(std::ostream& out, const Mesh& mesh)
{
    out << "meshfmt 1\n";
    out << "points " << mesh.n_points() << "\n";
    for (int i = 0; i < mesh.n_points(); ++i) {
        std::string flags;
        if (mesh.is_constant[i]) flags += 'C';
        if (mesh.is_boundary[i]) flags += 'B';
        if (flags.empty()) flags = "I";
        out << i << ' ' << fmt_real(mesh.points[i].x) << ' ' << fmt_real(mesh.points[i].y) << ' '
            << flags << "\n";
    }
    out << "triangles " << mesh.n_elements() << "\n";
    for (int t = 0; t < mesh.n_elements(); ++t) {
        const auto& tri = mesh.triangles[t];
        out << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << "\n";
    }
    out << "h " << fmt_real(mesh.element_size_h) << "\n";
}

void write_mesh_file(const std::string& path, const Mesh& mesh)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_mesh(out, mesh);
}

Mesh read_mesh(std::istream& in)
{
    std::string word;
    int version = 0;
    if (!(in >> word >> version) || word != "meshfmt" || version != 1)
        bad_format("missing 'meshfmt 1' header");

    Mesh mesh;
    int n = 0;
    if (!(in >> word >> n) || word != "points" || n < 0) bad_format("bad points section");
    mesh.points.resize(n);
    mesh.is_constant.assign(n, 0);
    mesh.is_boundary.assign(n, 0);
    for (int k = 0; k < n; ++k) {
        int idx;
        double x, y;
        std::string flags;
        if (!(in >> idx >> x >> y >> flags) || idx < 0 || idx >= n)
            bad_format("bad point line " + std::to_string(k));
        mesh.points[idx] = {x, y};
        for (char f : flags) {
            if (f == 'C') {
                mesh.is_constant[idx] = 1;
                mesh.is_boundary[idx] = 1;
            } else if (f == 'B') {
                mesh.is_boundary[idx] = 1;
            } else if (f != 'I') {
                bad_format("unknown flag in point line " + std::to_string(k));
            }
        }
    }

    int m = 0;
    if (!(in >> word >> m) || word != "triangles" || m < 0) bad_format("bad triangles section");
    mesh.triangles.resize(m);
    for (int k = 0; k < m; ++k) {
        int idx, a, b, c;
        if (!(in >> idx >> a >> b >> c) || idx < 0 || idx >= m)
            bad_format("bad triangle line " + std::to_string(k));
        if (a < 0 || a >= n || b < 0 || b >= n || c < 0 || c >= n)
            bad_format("triangle " + std::to_string(idx) + " references missing node");
        mesh.triangles[idx] = {a, b, c};
    }

    if (!(in >> word >> mesh.element_size_h) || word != "h" || mesh.element_size_h <= 0.0)
        bad_format("bad h line");
    mesh.prescribed_area = prescribed_area_for(mesh.element_size_h);
    mesh.boundary = build_boundary_segments(mesh);
    return mesh;
}

Mesh read_mesh_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    return read_mesh(in);
}

void write_solution_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& phi)
{
    if (static_cast<int>(phi.size()) != mesh.n_points())
        throw std::invalid_argument("solution length does not match node count");
    out << "node_id,x,y,phi\n";
    for (int i = 0; i < mesh.n_points(); ++i)
        out << i << ',' << fmt_real(mesh.points[i].x) << ',' << fmt_real(mesh.points[i].y) << ','
            << fmt_real(phi[i]) << "\n";
}

void write_solution_csv_file(const std::string& path, const Mesh& mesh,
                             const std::vector<double>& phi)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_solution_csv(out, mesh, phi);
}

std::vector<double> read_solution_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id,", 0) != 0)
        throw std::runtime_error("solution csv: missing header");
    std::vector<double> phi;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int id;
        double x, y, v;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &id, &x, &y, &v) != 4)
            throw std::runtime_error("solution csv: bad row '" + line + "'");
        if (id != static_cast<int>(phi.size()))
            throw std::runtime_error("solution csv: rows out of order");
        phi.push_back(v);
    }
    return phi;
}

std::vector<double> read_solution_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path);
    return read_solution_csv(in);
}

void write_error_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& phi,
                     const std::vector<double>& reference, const std::vector<double>& abs_error)
{
    out << "node_id,x,y,phi,reference,abs_error\n";
    for (int i = 0; i < mesh.n_points(); ++i)
        out << i << ',' << fmt_real(mesh.points[i].x) << ',' << fmt_real(mesh.points[i].y) << ','
            << fmt_real(phi[i]) << ',' << fmt_real(reference[i]) << ',' << fmt_real(abs_error[i])
            << "\n";
}

} // namespace metromesh
