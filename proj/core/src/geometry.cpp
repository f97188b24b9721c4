#include "metromesh/geometry.hpp"

namespace metromesh {

double signed_area(Point2 p1, Point2 p2, Point2 p3)
{
    return 0.5 * cross(p2 - p1, p3 - p1);
}

TriangleGeom::TriangleGeom(Point2 v1, Point2 v2, Point2 v3) : v_{v1, v2, v3}
{
    signed_area_ = metromesh::signed_area(v1, v2, v3);
    for (int k = 0; k < 3; ++k) {
        const Point2& p = v_[(k + 1) % 3];
        const Point2& q = v_[(k + 2) % 3];
        a_[k] = p.y - q.y;
        b_[k] = q.x - p.x;
        c_[k] = p.x * q.y - q.x * p.y;
    }
}

double TriangleGeom::bbox_diag_sq() const
{
    BBox box{v_[0].x, v_[0].x, v_[0].y, v_[0].y};
    box.expand(v_[1]);
    box.expand(v_[2]);
    return box.diag_sq();
}

Orientation orientation(const TriangleGeom& tri)
{
    const double eps = degeneracy_eps(tri.bbox_diag_sq());
    if (std::abs(tri.signed_area()) < eps) return Orientation::degenerate;
    return tri.signed_area() > 0 ? Orientation::counterclockwise : Orientation::clockwise;
}

AreaCoords area_coords(const TriangleGeom& tri, Point2 p)
{
    if (orientation(tri) == Orientation::degenerate)
        throw std::runtime_error("singular transform");
    const double two_s = 2.0 * tri.signed_area();
    const double l1 = (tri.coeff_a(0) * p.x + tri.coeff_b(0) * p.y + tri.coeff_c(0)) / two_s;
    const double l2 = (tri.coeff_a(1) * p.x + tri.coeff_b(1) * p.y + tri.coeff_c(1)) / two_s;
    return AreaCoords(l1, l2);
}

Point2 from_area_coords(const TriangleGeom& tri, const AreaCoords& c)
{
    const auto& v = tri.vertices();
    return c.l1 * v[0] + c.l2 * v[1] + c.l3 * v[2];
}

namespace {

double det3(double m00, double m01, double m02,
            double m10, double m11, double m12,
            double m20, double m21, double m22)
{
    return m00 * (m11 * m22 - m12 * m21)
         - m01 * (m10 * m22 - m12 * m20)
         + m02 * (m10 * m21 - m11 * m20);
}

} // namespace

double in_circumcircle(const TriangleGeom& tri, Point2 p)
{
    const auto& v = tri.vertices();
    // Shift by p: the 4x4 determinant with unit last column reduces to a 3x3.
    const double ax = v[0].x - p.x, ay = v[0].y - p.y;
    const double bx = v[1].x - p.x, by = v[1].y - p.y;
    const double cx = v[2].x - p.x, cy = v[2].y - p.y;
    double d = det3(ax, ay, ax * ax + ay * ay,
                    bx, by, bx * bx + by * by,
                    cx, cy, cx * cx + cy * cy);
    // d equals the row-based 4x4 determinant for the stored vertex order.
    // Normalize to clockwise order (flip once when counterclockwise) so that
    // inside is always negative.
    if (tri.signed_area() > 0) d = -d;
    return d;
}

std::array<std::array<double, 3>, 3> jacobian_matrix(const TriangleGeom& tri)
{
    const auto& v = tri.vertices();
    return {{{v[0].x, v[1].x, v[2].x},
             {v[0].y, v[1].y, v[2].y},
             {1.0, 1.0, 1.0}}};
}

std::array<Point2, 3> shape_gradients(const TriangleGeom& tri)
{
    const double two_s = 2.0 * tri.signed_area();
    return {Point2{tri.coeff_a(0) / two_s, tri.coeff_b(0) / two_s},
            Point2{tri.coeff_a(1) / two_s, tri.coeff_b(1) / two_s},
            Point2{tri.coeff_a(2) / two_s, tri.coeff_b(2) / two_s}};
}

Point2 circumcenter(const TriangleGeom& tri)
{
    const auto& v = tri.vertices();
    const Point2 d0 = v[1] - v[0];
    const Point2 d1 = v[2] - v[0];
    const double a = cross(d0, d1);
    if (a == 0.0) throw std::runtime_error("singular transform");
    const double d00 = dot(d0, d0);
    const double d11 = dot(d1, d1);
    const Point2 u{d1.y * d00 - d0.y * d11, d0.x * d11 - d1.x * d00};
    return u / (2.0 * a) + v[0];
}

} // namespace metromesh
