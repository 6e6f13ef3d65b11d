#include "waveobs/characteristic_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "waveobs/domain.hpp"
#include "waveobs/quadrature.hpp"

namespace waveobs {

namespace {

constexpr double kInclusionTol = 1e-12;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

struct CornerBox {
    double x[4];
    double t[4];
};

CornerBox corner_box(const SquareIndex& idx) {
    CornerBox c{};
    const auto corners = square_corners(idx);
    for (int k = 0; k < 4; ++k) {
        c.x[k] = corners[k].x.to_double();
        c.t[k] = corners[k].t.to_double();
    }
    return c;
}

bool corners_in_window(const CornerBox& c, double t_lo, double t_hi) {
    for (int k = 0; k < 4; ++k) {
        if (c.x[k] < -kInclusionTol || c.x[k] > 1.0 + kInclusionTol) {
            return false;
        }
        if (c.t[k] < t_lo - kInclusionTol || c.t[k] > t_hi + kInclusionTol) {
            return false;
        }
    }
    return true;
}

// Left/right boundary of the closed square at a given time, for t in [tb, tt].
std::pair<double, double> square_section(const CornerBox& c, double t) {
    // corners: bottom(0), right(1), top(2), left(3)
    const double tb = c.t[0];
    const double tm = c.t[1];
    const double tt = c.t[2];
    const double xb = c.x[0];
    const double xr = c.x[1];
    const double xl = c.x[3];
    double lo = 0.0;
    double hi = 0.0;
    if (t <= tm) {
        const double s = tm > tb ? (t - tb) / (tm - tb) : 0.0;
        lo = xb + s * (xl - xb);
        hi = xb + s * (xr - xb);
    } else {
        const double s = tt > tm ? (t - tm) / (tt - tm) : 0.0;
        lo = xl + s * (c.x[2] - xl);
        hi = xr + s * (c.x[2] - xr);
    }
    return {lo, hi};
}

bool square_in_tube(const SquareIndex& idx, const CurveTube& tube, double t_lo, double t_hi) {
    const CornerBox c = corner_box(idx);
    if (!corners_in_window(c, t_lo, t_hi)) {
        return false;
    }
    const Curve& g = tube.curve;
    std::vector<double> probes = {c.t[0], c.t[1], c.t[2]};
    const double dt = g.dt();
    const auto first = static_cast<std::int64_t>(std::ceil(c.t[0] / dt));
    for (std::int64_t k = std::max<std::int64_t>(first, 0);
         k <= static_cast<std::int64_t>(g.intervals()); ++k) {
        const double tk = g.time(static_cast<std::size_t>(k));
        if (tk >= c.t[2]) {
            break;
        }
        if (tk > c.t[0]) {
            probes.push_back(tk);
        }
    }
    for (double t : probes) {
        const auto [lo, hi] = square_section(c, t);
        const double center = g(t);
        if (lo < center - tube.delta0 - kInclusionTol || hi > center + tube.delta0 + kInclusionTol) {
            return false;
        }
    }
    return true;
}

bool square_in_cylinder(const SquareIndex& idx, const Cylinder& cyl, double t_lo, double t_hi) {
    const CornerBox c = corner_box(idx);
    if (!corners_in_window(c, t_lo, t_hi)) {
        return false;
    }
    for (int k = 0; k < 4; ++k) {
        if (c.x[k] < cyl.x0 - cyl.delta0 - kInclusionTol ||
            c.x[k] > cyl.x0 + cyl.delta0 + kInclusionTol) {
            return false;
        }
    }
    return true;
}

bool square_in_union(const SquareIndex& idx, const SquareUnion& u) {
    if (idx.n == u.level) {
        return u.squares.contains(idx);
    }
    if (idx.n % u.level == 0) {
        return u.squares.contains(parent_square(idx, u.level));
    }
    // Compare at the common refinement level.
    const int l = std::lcm(idx.n, u.level);
    for (const SquareIndex& s : subsquare_indices(idx, l / idx.n)) {
        if (!u.squares.contains(parent_square(s, u.level))) {
            return false;
        }
    }
    return true;
}

Polygon square_polygon(const SquareIndex& idx) {
    const auto c = square_corners(idx);
    Polygon p;
    for (const auto& g : c) {
        p.push_back({g.x.to_double(), g.t.to_double()});
    }
    return p;
}

}  // namespace

Subdivision::Subdivision(int n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("Subdivision: n must be >= 1");
    }
}

SquareIndex::SquareIndex(std::int64_t i_, std::int64_t j_, int n_) : i(i_), j(j_), n(n_) {
    if (i == 0 || j == 0) {
        throw std::invalid_argument("SquareIndex: indices must be nonzero");
    }
    if (n < 1) {
        throw std::invalid_argument("SquareIndex: level must be >= 1");
    }
}

int fold_index(std::int64_t i, int n) {
    if (i == 0) {
        throw std::invalid_argument("fold_index: index must be nonzero");
    }
    if (n < 1) {
        throw std::invalid_argument("fold_index: level must be >= 1");
    }
    if (i < 0) {
        return -fold_index(-i, n);
    }
    const std::int64_t r = (i - 1) % (2 * static_cast<std::int64_t>(n));
    return static_cast<int>(r < n ? r + 1 : r - 2 * n);
}

Rational interval_lo(std::int64_t i, int n) { return {cell_of_index(i), n}; }
Rational interval_hi(std::int64_t i, int n) { return {cell_of_index(i) + 1, n}; }

GridPoint square_center(const SquareIndex& idx) {
    const Rational mi = (interval_lo(idx.i, idx.n) + interval_hi(idx.i, idx.n)) / Rational(2);
    const Rational mj = (interval_lo(idx.j, idx.n) + interval_hi(idx.j, idx.n)) / Rational(2);
    return {(mi + mj) / Rational(2), (mi - mj) / Rational(2)};
}

std::array<GridPoint, 4> square_corners(const SquareIndex& idx) {
    const Rational a = interval_lo(idx.i, idx.n);
    const Rational b = interval_hi(idx.i, idx.n);
    const Rational c = interval_lo(idx.j, idx.n);
    const Rational d = interval_hi(idx.j, idx.n);
    const Rational two(2);
    auto pt = [&](const Rational& xi, const Rational& zeta) {
        return GridPoint{(xi + zeta) / two, (xi - zeta) / two};
    };
    return {pt(a, d), pt(b, d), pt(b, c), pt(a, c)};
}

Rational square_area(int n) {
    return {1, 2 * static_cast<std::int64_t>(n) * n};
}

std::vector<SquareIndex> subsquare_indices(const SquareIndex& idx, int p) {
    if (p < 1) {
        throw std::invalid_argument("subsquare_indices: p must be >= 1");
    }
    auto range = [p](std::int64_t i) {
        std::vector<std::int64_t> r;
        if (i > 0) {
            for (std::int64_t k = p * (i - 1) + 1; k <= p * i; ++k) {
                r.push_back(k);
            }
        } else {
            for (std::int64_t k = p * i; k <= p * (i + 1) - 1; ++k) {
                r.push_back(k);
            }
        }
        return r;
    };
    std::vector<SquareIndex> out;
    out.reserve(static_cast<std::size_t>(p) * p);
    for (std::int64_t a : range(idx.i)) {
        for (std::int64_t b : range(idx.j)) {
            out.emplace_back(a, b, idx.n * p);
        }
    }
    return out;
}

SquareIndex parent_square(const SquareIndex& idx, int n) {
    if (n < 1 || idx.n % n != 0) {
        throw std::invalid_argument("parent_square: level must divide the square level");
    }
    const int r = idx.n / n;
    auto up = [r](std::int64_t i) { return i > 0 ? ceil_div(i, r) : floor_div(i, r); };
    return {up(idx.i), up(idx.j), n};
}

std::vector<SquareIndex> squares_in_horizon(int n, double horizon) {
    std::vector<SquareIndex> out;
    const auto i_max = static_cast<std::int64_t>(std::ceil(n * (1.0 + horizon))) + 1;
    const auto j_min = -static_cast<std::int64_t>(std::ceil(n * horizon)) - 1;
    for (std::int64_t i = 1; i <= i_max; ++i) {
        for (std::int64_t j = j_min; j <= n; ++j) {
            if (j == 0) {
                continue;
            }
            const SquareIndex s(i, j, n);
            if (corners_in_window(corner_box(s), 0.0, horizon)) {
                out.push_back(s);
            }
        }
    }
    return out;
}

std::vector<SquareIndex> squares_in_domain(const ObservationDomain& domain, int n) {
    if (n < 1) {
        throw std::invalid_argument("squares_in_domain: level must be >= 1");
    }
    if (const auto* u = domain.as<SquareUnion>(); u != nullptr && u->level == n) {
        return {u->squares.begin(), u->squares.end()};
    }
    if (domain.is_empty()) {
        return {};
    }
    std::vector<SquareIndex> out;
    const double t_lo = std::max(0.0, domain.t_lo());
    const double t_hi = std::min(domain.horizon(), domain.t_hi());
    for (const SquareIndex& s : squares_in_horizon(n, domain.horizon())) {
        bool in = false;
        if (const auto* u = domain.as<SquareUnion>()) {
            in = square_in_union(s, *u);
        } else if (const auto* c = domain.as<Cylinder>()) {
            in = square_in_cylinder(s, *c, t_lo, t_hi);
        } else if (const auto* tb = domain.as<CurveTube>()) {
            in = square_in_tube(s, *tb, t_lo, t_hi);
        }
        if (in) {
            out.push_back(s);
        }
    }
    return out;
}

ObservationDomain epsilon_interior(const ObservationDomain& domain, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("epsilon_interior: eps must be > 0");
    }
    const double T = domain.horizon();
    const double t_lo = domain.t_lo() + eps;
    const double t_hi = domain.t_hi() - eps;
    if (domain.is_empty()) {
        return ObservationDomain::empty(T);
    }
    if (const auto* c = domain.as<Cylinder>()) {
        const double lo = std::max(c->x0 - c->delta0, 0.0) + eps;
        const double hi = std::min(c->x0 + c->delta0, 1.0) - eps;
        if (hi <= lo || t_hi <= t_lo) {
            return ObservationDomain::empty(T);
        }
        return {Cylinder{0.5 * (lo + hi), 0.5 * (hi - lo)}, T, t_lo, t_hi};
    }
    if (const auto* tb = domain.as<CurveTube>()) {
        const double m = tb->curve.lipschitz_estimate();
        const double w = tb->delta0 - eps * std::sqrt(1.0 + m * m);
        if (w <= 0.0 || t_hi <= t_lo) {
            return ObservationDomain::empty(T);
        }
        return {CurveTube{tb->curve, w}, T, t_lo, t_hi};
    }
    const auto& u = *domain.as<SquareUnion>();
    const int level = u.level;
    const int r = std::clamp(static_cast<int>(std::ceil(4.0 / (eps * level))), 1, 64);
    const auto reach = static_cast<std::int64_t>(std::ceil(eps * level * std::sqrt(2.0))) + 1;
    std::set<SquareIndex> kept;
    for (const SquareIndex& parent : u.squares) {
        const std::int64_t a0 = cell_of_index(parent.i);
        const std::int64_t b0 = cell_of_index(parent.j);
        std::vector<Polygon> outside;
        for (std::int64_t da = -reach; da <= reach; ++da) {
            for (std::int64_t db = -reach; db <= reach; ++db) {
                const SquareIndex nb(index_of_cell(a0 + da), index_of_cell(b0 + db), level);
                if (!u.squares.contains(nb)) {
                    outside.push_back(square_polygon(nb));
                }
            }
        }
        for (const SquareIndex& s : subsquare_indices(parent, r)) {
            const Polygon ps = square_polygon(s);
            bool ok = true;
            for (const Polygon& o : outside) {
                if (convex_polygon_distance(ps, o) < eps) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                kept.insert(s);
            }
        }
    }
    if (kept.empty()) {
        return ObservationDomain::empty(T);
    }
    return ObservationDomain::square_union(level * r, std::move(kept), T);
}

double polyline_offset_distance(const ObservationDomain& tube, double offset_a, double offset_b) {
    const auto* tb = tube.as<CurveTube>();
    if (tb == nullptr) {
        throw std::invalid_argument("polyline_offset_distance: domain must be a curve tube");
    }
    const Curve& g = tb->curve;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = g.intervals();
    for (std::size_t a = 0; a < m; ++a) {
        const Point2 a0{g.values()[a] + offset_a, g.time(a)};
        const Point2 a1{g.values()[a + 1] + offset_a, g.time(a + 1)};
        for (std::size_t b = 0; b < m; ++b) {
            const Point2 b0{g.values()[b] + offset_b, g.time(b)};
            const Point2 b1{g.values()[b + 1] + offset_b, g.time(b + 1)};
            best = std::min(best, segment_distance(a0, a1, b0, b1));
        }
    }
    return best;
}

double characteristic_position(double x0, int direction, double t) {
    double s = std::fmod(x0 + direction * t, 2.0);
    if (s < 0.0) {
        s += 2.0;
    }
    return s > 1.0 ? 2.0 - s : s;
}

bool goc_check(const ObservationDomain& domain, int starts, double step) {
    if (starts < 2) {
        throw std::invalid_argument("goc_check: starts must be >= 2");
    }
    if (domain.is_empty()) {
        return false;
    }
    const double T = domain.horizon();
    if (step <= 0.0) {
        step = T / 4096.0;
    }
    for (int k = 0; k < starts; ++k) {
        const double x0 = static_cast<double>(k) / (starts - 1);
        for (int dir : {1, -1}) {
            bool hit = false;
            for (double t = 0.0; t < T; t += step) {
                if (domain.contains(characteristic_position(x0, dir, t), t)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace waveobs
