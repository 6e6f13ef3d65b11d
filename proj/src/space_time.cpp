#include "waveobs/space_time.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace waveobs {

namespace {

int wrap_hat(std::int64_t k, int level) {
    const std::int64_t m = 2 * static_cast<std::int64_t>(level);
    std::int64_t r = k % m;
    if (r < 0) {
        r += m;
    }
    return static_cast<int>(r);
}

Polygon clip_box(const Polygon& p, double t0, double t1) {
    Polygon q = clip_halfplane(p, -1.0, 0.0, 0.0);
    q = clip_halfplane(q, 1.0, 0.0, 1.0);
    q = clip_halfplane(q, 0.0, -1.0, -t0);
    return clip_halfplane(q, 0.0, 1.0, t1);
}

std::pair<double, double> t_extent(const Polygon& p) {
    double lo = p[0].t;
    double hi = p[0].t;
    for (const Point2& v : p) {
        lo = std::min(lo, v.t);
        hi = std::max(hi, v.t);
    }
    return {lo, hi};
}

}  // namespace

SpaceTimeWeight::SpaceTimeWeight(const ObservationDomain& domain) : domain_(&domain) {
    t0_ = std::max(0.0, domain.t_lo());
    t1_ = std::min(domain.horizon(), domain.t_hi());
    if (const auto* c = domain.as<Cylinder>()) {
        centerline_ = Curve::constant(domain.horizon(), 1, c->x0);
        half_width_ = c->delta0;
    } else if (const auto* tb = domain.as<CurveTube>()) {
        centerline_ = tb->curve;
        half_width_ = tb->delta0;
    }
}

SpaceTimeWeight::SpaceTimeWeight(const ObservationDomain& domain, const WeightProfile& profile)
    : SpaceTimeWeight(domain) {
    if (domain.as<SquareUnion>() != nullptr) {
        throw std::invalid_argument("smooth weight requires a tube or cylinder domain");
    }
    if (!domain.is_empty() && std::abs(profile.delta0() - half_width_) > 1e-12) {
        throw std::invalid_argument("weight profile half-width differs from the domain half-width");
    }
    profile_ = profile;
}

std::pair<double, double> SpaceTimeWeight::x_support(double t0, double t1) const {
    if (centerline_.values().empty()) {
        return {0.0, 1.0};
    }
    const auto [lo, hi] = centerline_.range(t0, t1);
    return {lo - half_width_, hi + half_width_};
}

void SpaceTimeWeight::integrate_polygon(const Polygon& poly, int order,
                                        std::vector<QuadPoint>& out) const {
    if (domain_->is_empty()) {
        return;
    }
    const Polygon p = clip_box(poly, t0_, t1_);
    if (p.empty()) {
        return;
    }
    if (const auto* u = domain_->as<SquareUnion>()) {
        double xc = 0.0;
        double tc = 0.0;
        for (const Point2& v : p) {
            xc += v.x;
            tc += v.t;
        }
        xc /= static_cast<double>(p.size());
        tc /= static_cast<double>(p.size());
        const auto a = static_cast<std::int64_t>(std::floor((xc + tc) * u->level));
        const auto b = static_cast<std::int64_t>(std::floor((xc - tc) * u->level));
        if (u->squares.contains(SquareIndex(index_of_cell(a), index_of_cell(b), u->level))) {
            polygon_quadrature(p, order, out);
        }
        return;
    }
    const auto [tmin, tmax] = t_extent(p);
    const double dt = centerline_.dt();
    const auto values = centerline_.values();
    const auto k_lo = static_cast<std::int64_t>(
        std::clamp(std::floor(tmin / dt), 0.0, static_cast<double>(centerline_.intervals() - 1)));
    const auto k_hi = static_cast<std::int64_t>(
        std::clamp(std::ceil(tmax / dt), 1.0, static_cast<double>(centerline_.intervals())));
    for (std::int64_t k = k_lo; k < k_hi; ++k) {
        const double ta = centerline_.time(static_cast<std::size_t>(k));
        const double tb = centerline_.time(static_cast<std::size_t>(k + 1));
        Polygon slab = clip_halfplane(p, 0.0, -1.0, -ta);
        slab = clip_halfplane(slab, 0.0, 1.0, tb);
        if (slab.empty()) {
            continue;
        }
        // u = x - s t - c is the offset from the centerline on this slab.
        const double s = (values[k + 1] - values[k]) / dt;
        const double c = values[k] - s * ta;
        auto band = [&](double lo, double hi) {
            Polygon q = clip_halfplane(slab, 1.0, -s, hi + c);
            return clip_halfplane(q, -1.0, s, -lo - c);
        };
        if (!profile_) {
            polygon_quadrature(band(-half_width_, half_width_), order, out);
            continue;
        }
        const double pl = profile_->plateau();
        const std::array<std::pair<double, double>, 3> bands = {
            std::pair{-half_width_, -pl}, std::pair{-pl, pl}, std::pair{pl, half_width_}};
        for (const auto& [lo, hi] : bands) {
            const std::size_t first = out.size();
            polygon_quadrature(band(lo, hi), order, out);
            for (std::size_t q = first; q < out.size(); ++q) {
                out[q].w *= profile_->value(out[q].x - s * out[q].t - c);
            }
        }
    }
}

Polygon cell_polygon(const LatticeCell& c, int level) {
    const double L = level;
    auto pt = [L](double xi, double zeta) {
        return Point2{0.5 * (xi + zeta) / L, 0.5 * (xi - zeta) / L};
    };
    const auto a = static_cast<double>(c.a);
    const auto b = static_cast<double>(c.b);
    return {pt(a, b + 1), pt(a + 1, b + 1), pt(a + 1, b), pt(a, b)};
}

std::vector<LatticeCell> active_cells(const SpaceTimeWeight& w, int level) {
    std::vector<LatticeCell> cells;
    if (w.domain().is_empty()) {
        return cells;
    }
    const double T = w.domain().horizon();
    const double L = level;
    const auto a_max = static_cast<std::int64_t>(std::ceil((1.0 + T) * L));
    const auto b_min = -static_cast<std::int64_t>(std::ceil(T * L));
    for (std::int64_t a = 0; a < a_max; ++a) {
        for (std::int64_t b = b_min; b < level; ++b) {
            const double t_lo = (static_cast<double>(a - b) - 1.0) / (2.0 * L);
            const double t_hi = (static_cast<double>(a - b) + 1.0) / (2.0 * L);
            const double x_lo = static_cast<double>(a + b) / (2.0 * L);
            const double x_hi = (static_cast<double>(a + b) + 2.0) / (2.0 * L);
            if (t_hi <= w.t_begin() || t_lo >= w.t_end() || x_hi <= 0.0 || x_lo >= 1.0) {
                continue;
            }
            const auto [s_lo, s_hi] =
                w.x_support(std::max(t_lo, 0.0), std::min(t_hi, T));
            if (x_hi <= s_lo || x_lo >= s_hi) {
                continue;
            }
            cells.push_back({a, b});
        }
    }
    return cells;
}

CellElement cell_element(const SpaceTimeWeight& w, const LatticeCell& c, int level,
                         int quad_order) {
    CellElement e;
    thread_local std::vector<QuadPoint> pts;
    pts.clear();
    w.integrate_polygon(cell_polygon(c, level), quad_order, pts);
    if (pts.empty()) {
        return e;
    }
    e.empty = false;
    e.hat = {wrap_hat(c.a, level), wrap_hat(c.a + 1, level), wrap_hat(-c.b - 1, level),
             wrap_hat(-c.b, level)};
    const double L = level;
    const auto a = static_cast<double>(c.a);
    const auto b = static_cast<double>(c.b);
    for (const QuadPoint& q : pts) {
        const double xi = (q.x + q.t) * L;
        const double tau = (q.t - q.x) * L;
        const std::array<double, 4> v = {a + 1.0 - xi, xi - a, b + tau, -(tau + b + 1.0)};
        for (int r = 0; r < 4; ++r) {
            const double wr = q.w * v[r];
            for (int s = 0; s < 4; ++s) {
                e.m[r * 4 + s] += wr * v[s];
            }
        }
    }
    return e;
}

}  // namespace waveobs
