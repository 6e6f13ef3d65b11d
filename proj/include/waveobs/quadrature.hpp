#pragma once

#include <span>
#include <vector>

namespace waveobs {

struct Point2 {
    double x = 0.0;
    double t = 0.0;
};

/// Gauss-Legendre nodes and weights on [0,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

[[nodiscard]] GaussRule gauss_legendre_unit(int order);
/// Cached rule; orders 1..32.
[[nodiscard]] const GaussRule& gauss_rule(int order);

/// Integrates f over [a,b] with an n-point Gauss rule.
template <class F>
double integrate_segment(F&& f, double a, double b, int order) {
    const GaussRule& g = gauss_rule(order);
    double s = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        s += g.weights[k] * f(a + (b - a) * g.nodes[k]);
    }
    return s * (b - a);
}

/// Convex polygon with counter-clockwise vertices.
using Polygon = std::vector<Point2>;

/// Keeps the part of `poly` where a*x + b*t <= c (Sutherland-Hodgman, one edge).
[[nodiscard]] Polygon clip_halfplane(const Polygon& poly, double a, double b, double c);
[[nodiscard]] double polygon_area(const Polygon& poly);

struct QuadPoint {
    double x;
    double t;
    double w;
};

/// Collapsed (Duffy) tensor Gauss rule of `order` points per direction on
/// every fan triangle of a convex polygon. Exact for total degree 2*order - 2.
void polygon_quadrature(const Polygon& poly, int order, std::vector<QuadPoint>& out);

[[nodiscard]] double point_segment_distance(Point2 p, Point2 a, Point2 b);
[[nodiscard]] double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1);
/// Euclidean distance between two convex polygons (0 when they overlap).
[[nodiscard]] double convex_polygon_distance(const Polygon& p, const Polygon& q);

}  // namespace waveobs
