#include "waveobs/power_method.hpp"

#include <cmath>
#include <stdexcept>

#include "waveobs/errors.hpp"
#include "waveobs/hum_control.hpp"
#include "waveobs/presets.hpp"

namespace waveobs {

namespace {

double p1_mass(std::span<const double> a, std::span<const double> b, double h) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        s += h / 6.0 * (2.0 * a[k] * b[k] + a[k] * b[k + 1] + a[k + 1] * b[k] +
                        2.0 * a[k + 1] * b[k + 1]);
    }
    return s;
}

double p1_stiffness(std::span<const double> a, std::span<const double> b, double h) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        s += (a[k + 1] - a[k]) * (b[k + 1] - b[k]) / h;
    }
    return s;
}

}  // namespace

std::vector<double> poisson_solve(std::span<const double> f, int m) {
    if (m < 2 || f.size() != static_cast<std::size_t>(m) + 1) {
        throw std::invalid_argument("poisson_solve: need m >= 2 and m + 1 nodal values");
    }
    const double h = 1.0 / m;
    const std::size_t n = static_cast<std::size_t>(m) - 1;
    std::vector<double> diag(n, 2.0 / (h * h));
    std::vector<double> off(n > 0 ? n - 1 : 0, -1.0 / (h * h));
    std::vector<double> rhs(f.begin() + 1, f.end() - 1);
    const std::vector<double> inner = thomas_solve(off, diag, off, rhs);
    std::vector<double> u(static_cast<std::size_t>(m) + 1, 0.0);
    std::copy(inner.begin(), inner.end(), u.begin() + 1);
    return u;
}

double v_inner(const StatePair& a, const StatePair& b) {
    const double h = 1.0 / a.m();
    if (a.kind == StatePair::Kind::V) {
        return p1_stiffness(a.first, b.first, h) + p1_mass(a.second, b.second, h);
    }
    const std::vector<double> ia = poisson_solve(a.second, a.m());
    return p1_mass(a.first, b.first, h) + p1_mass(ia, b.second, h);
}

double state_norm(const StatePair& s) { return std::sqrt(std::max(0.0, v_inner(s, s))); }

StatePair riesz_map(const StatePair& w) {
    StatePair v;
    v.kind = StatePair::Kind::V;
    v.first = poisson_solve(w.second, w.m());
    v.second.resize(w.first.size());
    for (std::size_t i = 0; i < w.first.size(); ++i) {
        v.second[i] = -w.first[i];
    }
    return v;
}

OperatorContext::OperatorContext(ObservationDomain domain, int level, int quad_order, double tol)
    : domain_(std::move(domain)), level_(level), tol_(tol),
      gram_(assemble_gram(domain_, std::nullopt, level, quad_order)) {}

StatePair apply_R_Lambda(const OperatorContext& ctx, const StatePair& y) {
    const int L = ctx.level();
    if (y.m() != L) {
        throw std::invalid_argument("apply_R_Lambda: state grid must match the operator level");
    }
    const InitialState target = tabulated_state(y.first, y.second);
    const std::vector<double> b = assemble_rhs(target, L);
    const CgResult cg = pcg_solve(ctx.gram(), b, ctx.tol());
    const PiecewiseInitialData phi = adjoint_initial_data(cg.x, L);
    // Galerkin load of the cell values, divided by h: nodally exact for P1.
    std::vector<double> f(static_cast<std::size_t>(L) + 1, 0.0);
    for (int i = 1; i < L; ++i) {
        f[i] = 0.5 * (phi.beta()[i - 1] + phi.beta()[i]);
    }
    StatePair z;
    z.kind = StatePair::Kind::V;
    z.first = poisson_solve(f, L);
    z.second.resize(static_cast<std::size_t>(L) + 1);
    for (int i = 0; i <= L; ++i) {
        z.second[i] = -phi.phi0_nodes()[i];
    }
    return z;
}

PowerResult power_iterate(const OperatorContext& ctx, const StatePair& y_init, int max_iters,
                          double tol) {
    StatePair y = y_init;
    const double n0 = state_norm(y);
    if (n0 == 0.0) {
        throw DegenerateIterate();
    }
    for (double& v : y.first) {
        v /= n0;
    }
    for (double& v : y.second) {
        v /= n0;
    }
    PowerResult out;
    for (int it = 0; it < max_iters; ++it) {
        StatePair z = apply_R_Lambda(ctx, y);
        const double est = state_norm(z);
        if (!(est > 0.0)) {
            throw DegenerateIterate();
        }
        for (double& v : z.first) {
            v /= est;
        }
        for (double& v : z.second) {
            v /= est;
        }
        y = std::move(z);
        out.estimates.push_back(est);
        const std::size_t k = out.estimates.size();
        if (k >= 2 && std::abs(est - out.estimates[k - 2]) / out.estimates[k - 2] < tol) {
            out.converged = true;
            break;
        }
    }
    out.c_obs = out.estimates.back();
    // Sign convention: first nonzero component positive.
    double scale = 0.0;
    for (double v : y.first) {
        scale = std::max(scale, std::abs(v));
    }
    for (double v : y.second) {
        scale = std::max(scale, std::abs(v));
    }
    double lead = 0.0;
    for (const auto* vec : {&y.first, &y.second}) {
        for (double v : *vec) {
            if (lead == 0.0 && std::abs(v) > 1e-12 * scale) {
                lead = v;
            }
        }
    }
    if (lead < 0.0) {
        for (double& v : y.first) {
            v = -v;
        }
        for (double& v : y.second) {
            v = -v;
        }
    }
    out.worst_datum = std::move(y);
    return out;
}

StatePair default_power_start(int m) {
    StatePair y;
    y.kind = StatePair::Kind::V;
    y.first.resize(static_cast<std::size_t>(m) + 1);
    y.second.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int i = 0; i <= m; ++i) {
        const double x = static_cast<double>(i) / m;
        y.first[i] = x * (1.0 - x);
    }
    const double n = state_norm(y);
    for (double& v : y.first) {
        v /= n;
    }
    return y;
}

}  // namespace waveobs
