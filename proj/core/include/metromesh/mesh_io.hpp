#ifndef METROMESH_MESH_IO_HPP
#define METROMESH_MESH_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "metromesh/mesh.hpp"

namespace metromesh {

/// Text mesh format:
///   meshfmt 1
///   points N
///   idx x y flags        (C constant, B boundary, I internal)
///   triangles M
///   idx n1 n2 n3
///   h <value>
/// Reals carry 17 significant digits so a round trip is bit exact.
void write_mesh(std::ostream& out, const Mesh& mesh);
void write_mesh_file(const std::string& path, const Mesh& mesh);

Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);

/// Solution CSV: header `node_id,x,y,phi`, one row per node.
void write_solution_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& phi);
void write_solution_csv_file(const std::string& path, const Mesh& mesh,
                             const std::vector<double>& phi);
std::vector<double> read_solution_csv(std::istream& in);
std::vector<double> read_solution_csv_file(const std::string& path);

/// Error CSV: `node_id,x,y,phi,reference,abs_error`.
void write_error_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& phi,
                     const std::vector<double>& reference,
                     const std::vector<double>& abs_error);

} // namespace metromesh

#endif
