#include "waveobs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace waveobs {

GaussRule gauss_legendre_unit(int order) {
    if (order < 1) {
        throw std::invalid_argument("gauss_legendre_unit: order must be >= 1");
    }
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = z;
                p0 = 1.0;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        // map [-1,1] -> [0,1]
        rule.nodes[i] = 0.5 * (1.0 - z);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    if (n == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

const GaussRule& gauss_rule(int order) {
    static std::array<GaussRule, 33> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int k = 1; k <= 32; ++k) {
            cache[k] = gauss_legendre_unit(k);
        }
    });
    if (order < 1 || order > 32) {
        throw std::invalid_argument("gauss_rule: order must be in [1, 32]");
    }
    return cache[order];
}

Polygon clip_halfplane(const Polygon& poly, double a, double b, double c) {
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0) {
        return out;
    }
    out.reserve(n + 2);
    for (std::size_t k = 0; k < n; ++k) {
        const Point2& p = poly[k];
        const Point2& q = poly[(k + 1) % n];
        const double fp = a * p.x + b * p.t - c;
        const double fq = a * q.x + b * q.t - c;
        if (fp <= 0.0) {
            out.push_back(p);
        }
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
            const double s = fp / (fp - fq);
            out.push_back({p.x + s * (q.x - p.x), p.t + s * (q.t - p.t)});
        }
    }
    if (out.size() < 3) {
        out.clear();
    }
    return out;
}

double polygon_area(const Polygon& poly) {
    double s = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point2& p = poly[k];
        const Point2& q = poly[(k + 1) % n];
        s += p.x * q.t - q.x * p.t;
    }
    return 0.5 * s;
}

void polygon_quadrature(const Polygon& poly, int order, std::vector<QuadPoint>& out) {
    if (poly.size() < 3) {
        return;
    }
    const GaussRule& g = gauss_rule(order);
    const Point2 p0 = poly[0];
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const Point2 p1 = poly[k];
        const Point2 p2 = poly[k + 1];
        const double area2 = (p1.x - p0.x) * (p2.t - p0.t) - (p2.x - p0.x) * (p1.t - p0.t);
        if (std::abs(area2) < 1e-300) {
            continue;
        }
        const double jac = std::abs(area2);
        // (u, v) in [0,1]^2 -> barycentric (1-u, u(1-v), uv), Jacobian u * 2|T|.
        for (std::size_t a = 0; a < g.nodes.size(); ++a) {
            const double u = g.nodes[a];
            for (std::size_t b = 0; b < g.nodes.size(); ++b) {
                const double v = g.nodes[b];
                const double l1 = u * (1.0 - v);
                const double l2 = u * v;
                const double l0 = 1.0 - u;
                out.push_back({l0 * p0.x + l1 * p1.x + l2 * p2.x,
                               l0 * p0.t + l1 * p1.t + l2 * p2.t,
                               g.weights[a] * g.weights[b] * u * jac});
            }
        }
    }
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const double dx = b.x - a.x;
    const double dt = b.t - a.t;
    const double len2 = dx * dx + dt * dt;
    double s = 0.0;
    if (len2 > 0.0) {
        s = std::clamp(((p.x - a.x) * dx + (p.t - a.t) * dt) / len2, 0.0, 1.0);
    }
    return std::hypot(p.x - (a.x + s * dx), p.t - (a.t + s * dt));
}

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
    return (a.x - o.x) * (b.t - o.t) - (a.t - o.t) * (b.x - o.x);
}

bool segments_intersect(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
    const double d1 = cross(b0, b1, a0);
    const double d2 = cross(b0, b1, a1);
    const double d3 = cross(a0, a1, b0);
    const double d4 = cross(a0, a1, b1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool point_in_convex(const Polygon& poly, Point2 p) {
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (cross(poly[k], poly[(k + 1) % n], p) < 0.0) {
            return false;
        }
    }
    return true;
}

}  // namespace

double segment_distance(Point2 a0, Point2 a1, Point2 b0, Point2 b1) {
    if (segments_intersect(a0, a1, b0, b1)) {
        return 0.0;
    }
    return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                     point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

double convex_polygon_distance(const Polygon& p, const Polygon& q) {
    if (!p.empty() && (point_in_convex(q, p[0]) || (!q.empty() && point_in_convex(p, q[0])))) {
        return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < q.size(); ++b) {
            best = std::min(best, segment_distance(p[a], p[(a + 1) % p.size()], q[b],
                                                   q[(b + 1) % q.size()]));
        }
    }
    return best;
}

}  // namespace waveobs
