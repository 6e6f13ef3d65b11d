#include "waveobs/shape_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waveobs/dense.hpp"
#include "waveobs/quadrature.hpp"

namespace waveobs {

namespace {

constexpr int kBandOrder = 8;
constexpr int kLoadOrder = 8;

// Integral of phi(., t)^2 chi'(x - c) over [lo, hi], split where phi(., t) kinks.
double band_integral(const HumSolution& hum, const WeightProfile& profile, double t, double c,
                     double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (hi <= lo) {
        return 0.0;
    }
    const int L = hum.level;
    std::vector<double> cuts = {lo, hi};
    for (auto k = static_cast<std::int64_t>(std::ceil((lo + t) * L));
         k <= static_cast<std::int64_t>(std::floor((hi + t) * L)); ++k) {
        cuts.push_back(static_cast<double>(k) / L - t);
    }
    for (auto k = static_cast<std::int64_t>(std::ceil((t - hi) * L));
         k <= static_cast<std::int64_t>(std::floor((t - lo) * L)); ++k) {
        cuts.push_back(t - static_cast<double>(k) / L);
    }
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = std::clamp(cuts[k], lo, hi);
        const double b = std::clamp(cuts[k + 1], lo, hi);
        if (b <= a) {
            continue;
        }
        s += integrate_segment(
            [&](double x) {
                const double p = eval_phi(hum.adjoint, x, t);
                return p * p * profile.derivative(x - c);
            },
            a, b, kBandOrder);
    }
    return s;
}

}  // namespace

Curve make_initial_curve(const CurveStart& start, double horizon, std::size_t intervals) {
    if (start.kind == "constant") {
        return Curve::constant(horizon, intervals, start.value);
    }
    if (start.kind == "cosine") {
        std::vector<double> v(intervals + 1);
        for (std::size_t k = 0; k <= intervals; ++k) {
            const double t = horizon * static_cast<double>(k) / static_cast<double>(intervals);
            v[k] = 0.5 + 0.1 * std::cos(std::numbers::pi * t / horizon);
        }
        return {horizon, std::move(v)};
    }
    if (start.kind == "values") {
        if (start.values.size() != intervals + 1) {
            throw std::invalid_argument("initial curve: expected curve_intervals + 1 values");
        }
        return {horizon, start.values};
    }
    throw std::invalid_argument("initial curve: unknown kind " + start.kind);
}

CostResult cost(const Curve& curve, const InitialState& state, double eps_reg,
                const WeightProfile& profile, const HumConfig& cfg) {
    const ObservationDomain q = ObservationDomain::tube(curve, profile.delta0());
    CostResult out;
    out.hum = solve_hum(q, profile, state, cfg);
    out.j = out.hum.cost;
    out.j_eps = out.j + 0.5 * eps_reg * curve.derivative_norm_sq();
    return out;
}

double shape_density_at(const Curve& curve, const HumSolution& hum, const WeightProfile& profile,
                        double t) {
    if (hum.z.empty() || t < hum.domain.t_lo() || t > hum.domain.t_hi()) {
        return 0.0;
    }
    const double c = curve(t);
    return band_integral(hum, profile, t, c, c - profile.delta0(), c - profile.plateau()) +
           band_integral(hum, profile, t, c, c + profile.plateau(), c + profile.delta0());
}

std::vector<double> shape_derivative_density(const Curve& curve, const HumSolution& hum,
                                             const WeightProfile& profile) {
    std::vector<double> j(curve.intervals() + 1);
    for (std::size_t k = 0; k < j.size(); ++k) {
        j[k] = shape_density_at(curve, hum, profile, curve.time(k));
    }
    return j;
}

std::vector<double> shape_derivative_load(const Curve& curve, const HumSolution& hum,
                                          const WeightProfile& profile) {
    const std::size_t m = curve.intervals();
    std::vector<double> load(m + 1, 0.0);
    const GaussRule& g = gauss_rule(kLoadOrder);
    const double dt = curve.dt();
    for (std::size_t k = 0; k < m; ++k) {
        const double ta = curve.time(k);
        for (std::size_t q = 0; q < g.nodes.size(); ++q) {
            const double s = g.nodes[q];
            const double j = shape_density_at(curve, hum, profile, ta + s * dt);
            load[k] += g.weights[q] * dt * (1.0 - s) * j;
            load[k + 1] += g.weights[q] * dt * s * j;
        }
    }
    return load;
}

std::vector<double> mass_apply(const std::vector<double>& v, double dt) {
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out[k] += dt * (2.0 * v[k] + v[k + 1]) / 6.0;
        out[k + 1] += dt * (v[k] + 2.0 * v[k + 1]) / 6.0;
    }
    return out;
}

std::vector<double> stiffness_apply(const std::vector<double>& v, double dt) {
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double d = (v[k + 1] - v[k]) / dt;
        out[k] -= d;
        out[k + 1] += d;
    }
    return out;
}

std::vector<double> h1_smooth_load(const std::vector<double>& load, const Curve& curve,
                                   double eps_reg) {
    const std::size_t n = curve.intervals() + 1;
    if (load.size() != n) {
        throw std::invalid_argument("h1_smooth: load size must equal the curve node count");
    }
    if (eps_reg < 0.0) {
        throw std::invalid_argument("h1_smooth: eps_reg must be >= 0");
    }
    const double dt = curve.dt();
    const std::vector<double> gamma(curve.values().begin(), curve.values().end());
    const std::vector<double> kg = stiffness_apply(gamma, dt);
    std::vector<double> rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
        rhs[k] = load[k] + eps_reg * kg[k];
    }
    std::vector<double> diag(n, 0.0);
    std::vector<double> off(n - 1, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        diag[k] += dt / 3.0 + eps_reg / dt;
        diag[k + 1] += dt / 3.0 + eps_reg / dt;
        off[k] = dt / 6.0 - eps_reg / dt;
    }
    return thomas_solve(off, diag, off, rhs);
}

std::vector<double> h1_smooth(const std::vector<double>& j_values, const Curve& curve,
                              double eps_reg) {
    return h1_smooth_load(mass_apply(j_values, curve.dt()), curve, eps_reg);
}

Curve descent_step(const Curve& curve, const std::vector<double>& direction, double rho,
                   double delta0) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("descent_step: rho must be > 0");
    }
    if (direction.size() != curve.intervals() + 1) {
        throw std::invalid_argument("descent_step: direction size must equal the node count");
    }
    std::vector<double> v(curve.values().begin(), curve.values().end());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = std::clamp(v[k] - rho * direction[k], delta0, 1.0 - delta0);
    }
    return {curve.horizon(), std::move(v)};
}

double stopping_delta(const std::vector<double>& costs, std::size_t n, int p) {
    const auto pp = static_cast<std::size_t>(p);
    if (p < 1 || n < pp || n + pp > costs.size()) {
        throw std::invalid_argument("stopping_delta: not enough history");
    }
    double right = 0.0;
    double left = 0.0;
    for (std::size_t i = 0; i < pp; ++i) {
        right += costs[n + i];
        left += costs[n - pp + i];
    }
    return std::abs((right - left) / static_cast<double>(p) / costs[0]);
}

DescentTrace optimize(const OptimizerConfig& cfg, const InitialState& state) {
    if (cfg.p < 1 || cfg.max_iters < 0 || !(cfg.rho > 0.0)) {
        throw std::invalid_argument("optimize: invalid configuration");
    }
    const WeightProfile profile = cfg.profile();
    const HumConfig hum_cfg = cfg.hum();
    Curve gamma = make_initial_curve(cfg.gamma0, cfg.horizon, cfg.curve_intervals);
    DescentTrace trace;
    std::vector<double> costs;
    try {
        CostResult cr = cost(gamma, state, cfg.eps_reg, profile, hum_cfg);
        for (int it = 0;; ++it) {
            DescentRecord rec;
            rec.iteration = it;
            rec.j_eps = cr.j_eps;
            rec.j = cr.j;
            rec.lipschitz = gamma.lipschitz_estimate();
            rec.curve.assign(gamma.values().begin(), gamma.values().end());
            costs.push_back(cr.j_eps);
            const auto pp = static_cast<std::size_t>(cfg.p);
            if (costs.size() >= 2 * pp) {
                rec.delta_j = stopping_delta(costs, costs.size() - pp, cfg.p);
            }
            const bool stop = rec.delta_j >= 0.0 && rec.delta_j < cfg.eta;
            if (stop || it >= cfg.max_iters) {
                trace.records.push_back(std::move(rec));
                trace.converged = stop;
                break;
            }
            const std::vector<double> load = shape_derivative_load(gamma, cr.hum, profile);
            const std::vector<double> dir = h1_smooth_load(load, gamma, cfg.eps_reg);
            const double dt = gamma.dt();
            const std::vector<double> md = mass_apply(dir, dt);
            const std::vector<double> kd = stiffness_apply(dir, dt);
            rec.direction_norm = std::sqrt(dot(dir, md) + cfg.eps_reg * dot(dir, kd));
            rec.descent_rate = rec.direction_norm * rec.direction_norm;
            trace.records.push_back(std::move(rec));
            gamma = descent_step(gamma, dir, cfg.rho, cfg.delta0);
            cr = cost(gamma, state, cfg.eps_reg, profile, hum_cfg);
        }
    } catch (const std::exception& e) {
        trace.error = e.what();
    }
    return trace;
}

std::vector<double> default_sweep_grid() {
    std::vector<double> g(13);
    for (int k = 0; k < 13; ++k) {
        g[k] = 0.2 + 0.05 * k;
    }
    return g;
}

SweepResult cylindrical_sweep(const InitialState& state, const std::vector<double>& grid,
                              const OptimizerConfig& cfg) {
    if (grid.empty()) {
        throw std::invalid_argument("cylindrical_sweep: grid must be nonempty");
    }
    const WeightProfile profile = cfg.profile();
    SweepResult out;
    for (double x0 : grid) {
        const Curve c = Curve::constant(cfg.horizon, 1, x0);
        out.table.emplace_back(x0, cost(c, state, 0.0, profile, cfg.hum()).j);
    }
    std::vector<std::pair<double, double>> sorted = out.table;
    std::sort(sorted.begin(), sorted.end());
    out.best_x0 = sorted[0].first;
    out.best_j = sorted[0].second;
    for (const auto& [x0, j] : sorted) {
        if (j < out.best_j * (1.0 - 1e-9)) {
            out.best_x0 = x0;
            out.best_j = j;
        }
    }
    return out;
}

}  // namespace waveobs
