#ifndef METROMESH_GEOMETRY_HPP
#define METROMESH_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace metromesh {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm_sq(p)); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned bounding box, also used as the rectangular superdomain.
struct BBox {
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

    double diag_sq() const {
        const double dx = x_max - x_min, dy = y_max - y_min;
        return dx * dx + dy * dy;
    }
    double diag() const { return std::sqrt(diag_sq()); }
    void expand(Point2 p) {
        if (p.x < x_min) x_min = p.x;
        if (p.x > x_max) x_max = p.x;
        if (p.y < y_min) y_min = p.y;
        if (p.y > y_max) y_max = p.y;
    }
};

/// Scale-aware degeneracy threshold on (signed) areas.
inline double degeneracy_eps(double bbox_diag_sq) { return 1e-12 * bbox_diag_sq; }

/// Half the cross product of the edge vectors; positive for counterclockwise
/// vertex order, zero for collinear input.
double signed_area(Point2 p1, Point2 p2, Point2 p3);

/// Barycentric coordinates on a triangle. l3 is stored as 1 - l1 - l2 so the
/// partition of unity holds exactly.
struct AreaCoords {
    double l1 = 0, l2 = 0, l3 = 0;
    AreaCoords() = default;
    AreaCoords(double a, double b) : l1(a), l2(b), l3(1.0 - a - b) {}
};

/// A triangle with its signed area and the linear-interpolation coefficients
/// (a_k, b_k, c_k), k = 0..2, where L_k = (a_k x + b_k y + c_k) / (2 * signed area).
/// a_0 = y_1 - y_2, b_0 = x_2 - x_1, c_0 = x_1 y_2 - x_2 y_1, cyclic for the rest.
class TriangleGeom {
public:
    TriangleGeom(Point2 v1, Point2 v2, Point2 v3);

    const std::array<Point2, 3>& vertices() const { return v_; }
    double signed_area() const { return signed_area_; }
    double area() const { return std::abs(signed_area_); }
    double coeff_a(int k) const { return a_[k]; }
    double coeff_b(int k) const { return b_[k]; }
    double coeff_c(int k) const { return c_[k]; }
    /// Bounding-box diagonal squared of the three vertices.
    double bbox_diag_sq() const;

private:
    std::array<Point2, 3> v_;
    double signed_area_;
    std::array<double, 3> a_, b_, c_;
};

enum class Orientation { clockwise, counterclockwise, degenerate };

/// Classifies by the sign of the signed area (the z component of t12 x t13);
/// |area| below the scale-aware threshold counts as degenerate.
Orientation orientation(const TriangleGeom& tri);

/// Throws std::runtime_error("singular transform") for a degenerate triangle.
AreaCoords area_coords(const TriangleGeom& tri, Point2 p);

/// Inverse of area_coords: x = sum L_k x_k, y = sum L_k y_k.
Point2 from_area_coords(const TriangleGeom& tri, const AreaCoords& c);

/// In-circle determinant with rows (x, y, x^2 + y^2, 1) for the three vertices
/// then p, normalized internally to clockwise vertex order. Negative means p is
/// strictly inside the circumcircle, positive outside, zero co-circular.
double in_circumcircle(const TriangleGeom& tri, Point2 p);

/// Column-of-vertices Jacobian of the map from area to cartesian coordinates;
/// its determinant equals twice the signed area.
std::array<std::array<double, 3>, 3> jacobian_matrix(const TriangleGeom& tri);

/// Cartesian gradients of the three linear shape functions,
/// grad L_k = (a_k, b_k) / (2 * signed area). They sum to zero.
std::array<Point2, 3> shape_gradients(const TriangleGeom& tri);

/// Circumcenter of a non-degenerate triangle.
Point2 circumcenter(const TriangleGeom& tri);

} // namespace metromesh

#endif
