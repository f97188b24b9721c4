#ifndef METROMESH_FEM_HPP
#define METROMESH_FEM_HPP

#include <functional>
#include <map>

#include <Eigen/Sparse>

#include "metromesh/mesh.hpp"

namespace metromesh {

/// Quadrature on the reference triangle in area coordinates, normalized so
/// the weights sum to one; a physical integral is |det J| / 2 * sum W_q f_q.
struct QuadratureRule {
    std::vector<AreaCoords> points;
    std::vector<double> weights;
};

/// order 1: centroid rule, exact for degree <= 1;
/// order 3: edge-midpoint rule, exact for degree <= 2.
QuadratureRule quadrature_rule(int order);

/// Problem data: diffusivity, source density and Dirichlet boundary values,
/// all as functions of cartesian position.
struct CoefficientFields {
    std::function<double(double, double)> epsilon = [](double, double) { return 1.0; };
    std::function<double(double, double)> rho = [](double, double) { return 0.0; };
    std::function<double(double, double)> gamma = [](double, double) { return 0.0; };
};

struct ElementMatrices {
    std::array<std::array<double, 3>, 3> stiffness{};
    std::array<double, 3> load{};
    std::array<int, 3> node_ids{-1, -1, -1};
};

/// Element integrals K_lm = int eps grad N_l . grad N_m and f_m = int rho N_m
/// evaluated with the given rule; coefficients are sampled at quadrature
/// points mapped to cartesian coordinates.
ElementMatrices element_matrices(const TriangleGeom& tri, const CoefficientFields& fields,
                                 const QuadratureRule& rule);

/// Assembled system. rhs is the right-hand side of matrix * phi = rhs; a
/// fresh assembly stores the stiffness matrix and rhs = -f, matching the
/// solve convention phi = -K^{-1} f. apply_dirichlet rewrites both.
struct LinearSystem {
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    std::map<int, double> dirichlet;
};

LinearSystem assemble(const Mesh& mesh, const CoefficientFields& fields,
                      const QuadratureRule& rule);

/// Symmetric elimination of the boundary rows and columns: boundary rows
/// become identity with their prescribed value on the rhs, and boundary
/// column contributions move to the right-hand side of the free rows. The
/// free block stays symmetric positive definite.
LinearSystem apply_dirichlet(const LinearSystem& system, const Mesh& mesh,
                             const std::function<double(double, double)>& gamma);

/// Direct factorization; throws std::runtime_error("solve failed ...") when
/// the factorization breaks down or the relative residual exceeds 1e-10.
Eigen::VectorXd solve(const LinearSystem& system);

} // namespace metromesh

#endif
