#include "metromesh/problems.hpp"

#include <cmath>
#include <numbers>

namespace metromesh {

double rect_series(Point2 p, const RectLaplaceSpec& spec)
{
    const double pi = std::numbers::pi;
    const double ax = std::abs(p.x);
    double sum = 0.0, comp = 0.0; // Kahan accumulator
    for (int n = 1; n <= spec.series_terms; n += 2) {
        const double npi = n * pi;
        // cosh(n pi x) / cosh(n pi) without evaluating either cosh.
        const double ratio =
            std::exp(npi * (ax - 1.0)) * (1.0 + std::exp(-2.0 * npi * ax)) /
            (1.0 + std::exp(-2.0 * npi));
        const double term = ratio * std::sin(npi * p.y) / n;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 4.0 * spec.phi0 / pi * sum;
}

double circle_exact(Point2 p)
{
    return 0.25 * (1.0 - p.x * p.x - p.y * p.y);
}

ErrorReport compare(const Mesh& mesh, const std::vector<double>& numeric,
                    const std::function<double(Point2)>& reference,
                    const std::vector<int>& exclude_from_max)
{
    if (static_cast<int>(numeric.size()) != mesh.n_points())
        throw std::invalid_argument("compare: solution length does not match node count");

    std::vector<char> excluded(mesh.n_points(), 0);
    for (int i : exclude_from_max)
        if (i >= 0 && i < mesh.n_points()) excluded[i] = 1;

    ErrorReport report;
    report.h_used = mesh.element_size_h;
    report.nodewise_errors.resize(mesh.n_points());
    for (int i = 0; i < mesh.n_points(); ++i) {
        const double err = std::abs(numeric[i] - reference(mesh.points[i]));
        report.nodewise_errors[i] = err;
        if (!excluded[i] && err > report.max_abs_error) {
            report.max_abs_error = err;
            report.argmax_node = i;
        }
    }
    return report;
}

std::vector<int> conflicting_corner_nodes(const Mesh& mesh, double tol)
{
    std::vector<int> corners;
    for (int i = 0; i < mesh.n_points(); ++i) {
        const Point2 p = mesh.points[i];
        const bool side = std::abs(p.x - 1.0) <= tol || std::abs(p.x + 1.0) <= tol;
        const bool lid = std::abs(p.y) <= tol || std::abs(p.y - 1.0) <= tol;
        if (side && lid) corners.push_back(i);
    }
    return corners;
}

CoefficientFields rect_laplace_fields(double phi0, double tol)
{
    CoefficientFields fields;
    fields.epsilon = [](double, double) { return 1.0; };
    fields.rho = [](double, double) { return 0.0; };
    fields.gamma = [phi0, tol](double x, double) {
        return (std::abs(x - 1.0) <= tol || std::abs(x + 1.0) <= tol) ? phi0 : 0.0;
    };
    return fields;
}

CoefficientFields circle_poisson_fields()
{
    CoefficientFields fields;
    fields.epsilon = [](double, double) { return 1.0; };
    // Strong form -eps lap(phi) + rho = 0, so a unit negative Laplacian means
    // rho = -1; the positive exact solution pins this sign.
    fields.rho = [](double, double) { return -1.0; };
    fields.gamma = [](double, double) { return 0.0; };
    return fields;
}

} // namespace metromesh
