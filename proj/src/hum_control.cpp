#include "waveobs/hum_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waveobs/errors.hpp"
#include "waveobs/kernels.hpp"
#include "waveobs/quadrature.hpp"
#include "waveobs/space_time.hpp"

namespace waveobs {

namespace {

SpaceTimeWeight make_weight(const ObservationDomain& domain,
                            const std::optional<WeightProfile>& weight) {
    return weight ? SpaceTimeWeight(domain, *weight) : SpaceTimeWeight(domain);
}

// Integral of f over [a, b], split at the given breakpoints.
template <class F>
double integrate_split(F&& f, double a, double b, const std::vector<double>& cuts, int order) {
    double s = 0.0;
    double lo = a;
    for (double c : cuts) {
        if (c > lo && c < b) {
            s += integrate_segment(f, lo, c, order);
            lo = c;
        }
    }
    return s + integrate_segment(f, lo, b, order);
}

}  // namespace

PiecewiseInitialData adjoint_initial_data(std::span<const double> z, int level) {
    if (z.size() != hum_basis_size(level)) {
        throw std::invalid_argument("adjoint_initial_data: coefficient count must be 2L-1");
    }
    const int L = level;
    auto f = [&](int k) { return (k % (2 * L)) == 0 ? 0.0 : z[(k % (2 * L)) - 1]; };
    std::vector<double> alpha(L);
    std::vector<double> beta(L);
    for (int i = 1; i <= L; ++i) {
        const double right = L * (f(i) - f(i - 1));
        const double left = L * (f(2 * L - i + 1) - f(2 * L - i));
        alpha[i - 1] = right + left;
        beta[i - 1] = right - left;
    }
    return {L, std::move(alpha), std::move(beta)};
}

DenseMatrix assemble_gram(const ObservationDomain& domain,
                          const std::optional<WeightProfile>& weight, int level, int quad_order,
                          bool parallel) {
    if (level < 2) {
        throw std::invalid_argument("assemble_gram: level must be >= 2");
    }
    if (const auto* u = domain.as<SquareUnion>(); u != nullptr && level % u->level != 0) {
        throw std::invalid_argument("assemble_gram: level must be a multiple of the square level");
    }
    const SpaceTimeWeight w = make_weight(domain, weight);
    const DenseMatrix full = parallel ? assemble_gram_omp(w, level, quad_order)
                                      : assemble_gram_serial(w, level, quad_order);
    const std::size_t n = hum_basis_size(level);
    DenseMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            g(r, c) = full(r + 1, c + 1);
        }
    }
    return g;
}

std::vector<double> assemble_rhs(const InitialState& state, int level) {
    const int L = level;
    std::vector<double> full(2 * static_cast<std::size_t>(L), 0.0);
    for (int c = 0; c < L; ++c) {
        const double a = static_cast<double>(c) / L;
        const double b = static_cast<double>(c + 1) / L;
        const int h0 = c;
        const int h1 = c + 1;
        const int m0 = 2 * L - c - 1;
        const int m1 = (2 * L - c) % (2 * L);
        // Local integrals of (slope * y0 - value * y1) for the four hats.
        std::array<double, 4> acc{};
        for (int k = 0; k < 4; ++k) {
            acc[k] = integrate_split(
                [&](double x) {
                    const double w = x * L - c;
                    const double y0 = state.y0(x);
                    const double y1 = state.y1(x);
                    switch (k) {
                        case 0:
                            return -L * y0 - (1.0 - w) * y1;  // h_c(x)
                        case 1:
                            return L * y0 - w * y1;  // h_{c+1}(x)
                        case 2:
                            // h_{2L-c-1}(-x): value w, slope at -x is -L
                            return -(-L * y0 - w * y1);
                        default:
                            // h_{2L-c}(-x): value 1 - w, slope at -x is +L
                            return -(L * y0 - (1.0 - w) * y1);
                    }
                },
                a, b, state.breakpoints, 8);
        }
        full[h0] += acc[0];
        full[h1 % (2 * L)] += acc[1];
        full[m0] += acc[2];
        full[m1] += acc[3];
    }
    return {full.begin() + 1, full.end()};
}

HumSystem assemble_hum_system(const ObservationDomain& domain,
                              const std::optional<WeightProfile>& weight,
                              const InitialState& state, const HumConfig& cfg) {
    return {assemble_gram(domain, weight, cfg.level, cfg.quad_order, cfg.parallel),
            assemble_rhs(state, cfg.level)};
}

CgResult pcg_solve(const DenseMatrix& a, std::span<const double> b, double tol, int max_iter) {
    const std::size_t n = b.size();
    if (a.rows() != n || a.cols() != n) {
        throw std::invalid_argument("pcg_solve: size mismatch");
    }
    if (max_iter <= 0) {
        max_iter = 10 * static_cast<int>(n);
    }
    CgResult out;
    out.x.assign(n, 0.0);
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) {
        return out;
    }
    std::vector<double> inv_diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        inv_diag[k] = a(k, k) > 0.0 ? 1.0 / a(k, k) : 1.0;
    }
    std::vector<double> r(b.begin(), b.end());
    std::vector<double> zv(n);
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        zv[k] = inv_diag[k] * r[k];
    }
    p = zv;
    double rz = dot(r, zv);
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> ap = a.multiply(p);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            throw IllConditionedHum();
        }
        const double alpha = rz / pap;
        for (std::size_t k = 0; k < n; ++k) {
            out.x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        out.iterations = it;
        out.residual = std::sqrt(dot(r, r)) / bnorm;
        if (out.residual <= tol) {
            // Confirm with the true residual to guard against drift.
            const std::vector<double> ax = a.multiply(out.x);
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += (b[k] - ax[k]) * (b[k] - ax[k]);
            }
            const double true_res = std::sqrt(s) / bnorm;
            if (true_res <= 10.0 * tol) {
                out.residual = true_res;
                return out;
            }
            for (std::size_t k = 0; k < n; ++k) {
                r[k] = b[k] - ax[k];
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            zv[k] = inv_diag[k] * r[k];
        }
        const double rz_new = dot(r, zv);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = zv[k] + beta * p[k];
        }
    }
    throw IllConditionedHum();
}

HumSolution solve_hum_system(const ObservationDomain& domain,
                             const std::optional<WeightProfile>& weight, const DenseMatrix& gram,
                             std::span<const double> rhs, int level, double tol) {
    const CgResult cg = pcg_solve(gram, rhs, tol);
    HumSolution sol;
    sol.level = level;
    sol.z = cg.x;
    sol.cost = dot(rhs, cg.x);
    sol.iterations = cg.iterations;
    sol.residual = cg.residual;
    sol.domain = domain;
    sol.weight = weight;
    sol.adjoint = adjoint_initial_data(sol.z, level);
    return sol;
}

HumSolution solve_hum(const ObservationDomain& domain, const std::optional<WeightProfile>& weight,
                      const InitialState& state, const HumConfig& cfg) {
    const HumSystem sys = assemble_hum_system(domain, weight, state, cfg);
    return solve_hum_system(domain, weight, sys.gram, sys.rhs, cfg.level, cfg.tol);
}

double control_eval(const HumSolution& sol, double x, double t) {
    if (sol.z.empty() || !sol.domain.contains(x, t)) {
        return 0.0;
    }
    return eval_phi(sol.adjoint, x, t);
}

ForwardResult forward_verify(const HumSolution& sol, const InitialState& state, int grid_m,
                             bool controlled) {
    if (sol.level < 1 || grid_m % sol.level != 0) {
        throw std::invalid_argument("forward_verify: grid_m must be a multiple of the HUM level");
    }
    const double T = sol.domain.horizon();
    const int m = grid_m;
    const double h = 1.0 / m;
    const int steps = static_cast<int>(std::lround(T * m));
    if (std::abs(steps * h - T) > 1e-12) {
        throw std::invalid_argument("forward_verify: horizon must be a multiple of 1/grid_m");
    }
    ForwardResult out;
    out.grid_m = m;
    out.steps = steps;
    out.initial_norm = std::sqrt(state_v_norm_sq(state));
    if (out.initial_norm == 0.0) {
        return out;
    }
    const SpaceTimeWeight w = make_weight(sol.domain, sol.weight);
    const bool source = controlled && !sol.z.empty();

    // Source integrals: index (n, i) -> diamond centred at (i h, n h), made of
    // the four level-m cells a in {i+n-1, i+n}, b in {i-n-1, i-n}. For n = 0
    // only the part t >= 0 survives the window clip.
    std::vector<Polygon> polys;
    std::vector<std::pair<int, int>> owner;
    if (source) {
        for (int n = 0; n <= steps; ++n) {
            const double tc = n * h;
            const auto [s_lo, s_hi] =
                w.x_support(std::max(0.0, tc - h), std::min(T, tc + h));
            if (tc - h >= w.t_end() || tc + h <= w.t_begin()) {
                continue;
            }
            for (int i = 1; i < m; ++i) {
                const double xc = i * h;
                if (xc + h <= s_lo || xc - h >= s_hi) {
                    continue;
                }
                for (int da = 0; da < 2; ++da) {
                    for (int db = 0; db < 2; ++db) {
                        polys.push_back(cell_polygon({i + n - 1 + da, i - n - 1 + db}, m));
                        owner.emplace_back(n, i);
                    }
                }
            }
        }
    }
    std::vector<std::vector<double>> diamond(steps + 1, std::vector<double>(m + 1, 0.0));
    if (!polys.empty()) {
        const std::vector<double> vals = source_integrals_omp(w, sol.adjoint, polys, 4);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            diamond[owner[k].first][owner[k].second] += vals[k];
        }
    }

    auto& u = out.trajectory;
    u.assign(steps + 2, std::vector<double>(m + 1, 0.0));
    for (int i = 1; i < m; ++i) {
        u[0][i] = state.y0(i * h);
    }
    for (int i = 1; i < m; ++i) {
        const double x = i * h;
        const double mean_y1 = integrate_split(state.y1, x - h, x + h, state.breakpoints, 8);
        // The n = 0 diamond restricted to t >= 0 is the backward cone of (x, h).
        u[1][i] = 0.5 * (u[0][i + 1] + u[0][i - 1]) + 0.5 * mean_y1 + 0.5 * diamond[0][i];
    }
    for (int n = 1; n <= steps; ++n) {
        for (int i = 1; i < m; ++i) {
            u[n + 1][i] = u[n][i + 1] + u[n][i - 1] - u[n - 1][i] + 0.5 * diamond[n][i];
        }
    }
    // After T the wave is free, so the step T -> T + h yields exact window
    // means of y_t(., T) over [x - h, x + h].
    double ex = 0.0;
    double et = 0.0;
    for (int i = 0; i < m; ++i) {
        const double d = u[steps][i + 1] - u[steps][i];
        ex += d * d / h;
    }
    for (int i = 1; i < m; ++i) {
        const double mean_yt =
            (u[steps + 1][i] - 0.5 * (u[steps][i + 1] + u[steps][i - 1])) / h;
        et += h * mean_yt * mean_yt;
    }
    out.terminal_norm = std::sqrt(ex + et);
    out.ratio = out.terminal_norm / out.initial_norm;
    return out;
}

}  // namespace waveobs
