#include "metromesh/fem.hpp"

#include <Eigen/SparseCholesky>

namespace metromesh {

QuadratureRule quadrature_rule(int order)
{
    QuadratureRule rule;
    if (order == 1) {
        rule.points = {AreaCoords(1.0 / 3.0, 1.0 / 3.0)};
        rule.weights = {1.0};
    } else if (order == 3) {
        rule.points = {AreaCoords(0.5, 0.5), AreaCoords(0.0, 0.5), AreaCoords(0.5, 0.0)};
        rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    } else {
        throw std::invalid_argument("quadrature_rule: unsupported order " + std::to_string(order));
    }
    return rule;
}

ElementMatrices element_matrices(const TriangleGeom& tri, const CoefficientFields& fields,
                                 const QuadratureRule& rule)
{
    if (orientation(tri) == Orientation::degenerate)
        throw std::runtime_error("element_matrices: degenerate triangle");

    ElementMatrices em;
    const double half_det_j = tri.area(); // |det J| / 2
    const auto grads = shape_gradients(tri);

    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const AreaCoords& c = rule.points[q];
        const Point2 xq = from_area_coords(tri, c);
        const double wq = rule.weights[q] * half_det_j;
        const double eps_q = fields.epsilon(xq.x, xq.y);
        const double rho_q = fields.rho(xq.x, xq.y);
        const double l[3] = {c.l1, c.l2, c.l3};
        for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n)
                em.stiffness[m][n] += wq * eps_q * dot(grads[m], grads[n]);
            em.load[m] += wq * rho_q * l[m];
        }
    }
    return em;
}

LinearSystem assemble(const Mesh& mesh, const CoefficientFields& fields,
                      const QuadratureRule& rule)
{
    const int n = mesh.n_points();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(mesh.n_elements()) * 9);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(n);

    for (int t = 0; t < mesh.n_elements(); ++t) {
        ElementMatrices em = element_matrices(mesh.tri_geom(t), fields, rule);
        em.node_ids = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            load[em.node_ids[i]] += em.load[i];
            for (int j = 0; j < 3; ++j)
                triplets.emplace_back(em.node_ids[i], em.node_ids[j], em.stiffness[i][j]);
        }
    }

    LinearSystem sys;
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.rhs = -load;
    return sys;
}

LinearSystem apply_dirichlet(const LinearSystem& system, const Mesh& mesh,
                             const std::function<double(double, double)>& gamma)
{
    const int n = static_cast<int>(system.matrix.rows());
    LinearSystem out;
    for (int i = 0; i < mesh.n_points(); ++i)
        if (mesh.is_boundary[i])
            out.dirichlet[i] = gamma(mesh.points[i].x, mesh.points[i].y);

    out.rhs = system.rhs;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(system.matrix.nonZeros() + out.dirichlet.size());

    for (int col = 0; col < system.matrix.outerSize(); ++col) {
        const bool col_fixed = out.dirichlet.count(col) > 0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(system.matrix, col); it; ++it) {
            const int row = static_cast<int>(it.row());
            if (out.dirichlet.count(row)) continue;
            if (col_fixed)
                out.rhs[row] -= it.value() * out.dirichlet.at(col);
            else
                triplets.emplace_back(row, col, it.value());
        }
    }
    for (const auto& [node, value] : out.dirichlet) {
        triplets.emplace_back(node, node, 1.0);
        out.rhs[node] = value;
    }

    out.matrix.resize(n, n);
    out.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

Eigen::VectorXd solve(const LinearSystem& system)
{
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(system.matrix);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("solve failed: factorization did not succeed "
                                 "(matrix singular or indefinite)");
    const Eigen::VectorXd phi = ldlt.solve(system.rhs);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("solve failed: back substitution");

    const double rhs_norm = system.rhs.norm();
    const double residual = (system.matrix * phi - system.rhs).norm();
    const double rel = residual / (rhs_norm > 0.0 ? rhs_norm : 1.0);
    if (!(rel <= 1e-10))
        throw std::runtime_error("solve failed: relative residual " + std::to_string(rel) +
                                 " exceeds 1e-10");
    return phi;
}

} // namespace metromesh
