#ifndef METROMESH_PROBLEMS_HPP
#define METROMESH_PROBLEMS_HPP

#include <functional>
#include <vector>

#include "metromesh/fem.hpp"
#include "metromesh/mesh.hpp"

namespace metromesh {

/// Laplace problem on [-1,1] x [0,1] with phi = phi0 on x = +-1 and phi = 0
/// on the other two sides; reference values come from the separated series
/// truncated at odd terms up to series_terms.
struct RectLaplaceSpec {
    double phi0 = 1.0;
    int series_terms = 200;
};

/// Partial sum of (4 phi0 / pi) sum_{n odd} cosh(n pi x) / cosh(n pi) *
/// sin(n pi y) / n, accumulated in ascending n with compensated summation;
/// the cosh ratio is evaluated in exponential form so large n cannot
/// overflow.
double rect_series(Point2 p, const RectLaplaceSpec& spec);

/// Exact solution of the unit-circle Poisson problem with unit negative
/// Laplacian and zero boundary values.
double circle_exact(Point2 p);

struct ErrorReport {
    double max_abs_error = 0.0;
    int argmax_node = -1;
    std::vector<double> nodewise_errors;
    double h_used = 0.0;
};

/// Nodewise |numeric - reference|; nodes listed in exclude_from_max still get
/// their error recorded but do not contribute to the maximum. Throws
/// std::invalid_argument on a length mismatch.
ErrorReport compare(const Mesh& mesh, const std::vector<double>& numeric,
                    const std::function<double(Point2)>& reference,
                    const std::vector<int>& exclude_from_max = {});

/// The rectangle corners where the phi0 data meets the zero data; their
/// Dirichlet value is ambiguous, so validation excludes them by default.
std::vector<int> conflicting_corner_nodes(const Mesh& mesh, double tol);

/// Coefficient fields for the two benchmark problems.
CoefficientFields rect_laplace_fields(double phi0, double tol);
CoefficientFields circle_poisson_fields();

} // namespace metromesh

#endif
