#include "waveobs/dalembert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "waveobs/domain.hpp"
#include "waveobs/obs_graph.hpp"
#include "waveobs/quadrature.hpp"

namespace waveobs {

namespace {

// Reduces s to [0, 2).
double wrap2(double s) {
    double r = std::fmod(s, 2.0);
    if (r < 0.0) {
        r += 2.0;
    }
    return r >= 2.0 ? 0.0 : r;
}

// Extended interval index of the cell containing s; lattice points go to the
// lower cell.
std::int64_t lower_cell_index(double s, int level) {
    const double v = s * level;
    const auto k = static_cast<std::int64_t>(std::ceil(v)) - 1;
    return index_of_cell(k);
}

}  // namespace

PiecewiseInitialData::PiecewiseInitialData(int level, std::vector<double> alpha,
                                           std::vector<double> beta)
    : level_(level), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (level_ < 1) {
        throw std::invalid_argument("PiecewiseInitialData: level must be >= 1");
    }
    if (alpha_.size() != static_cast<std::size_t>(level_) ||
        beta_.size() != static_cast<std::size_t>(level_)) {
        throw std::invalid_argument("PiecewiseInitialData: coefficient count must equal level");
    }
    double sum = 0.0;
    double scale = 0.0;
    for (double a : alpha_) {
        sum += a;
        scale += std::abs(a);
    }
    if (std::abs(sum) > 1e-9 * std::max(1.0, scale)) {
        throw std::invalid_argument("PiecewiseInitialData: slopes must sum to zero");
    }
    phi0_nodes_.assign(level_ + 1, 0.0);
    phi1_prefix_.assign(level_ + 1, 0.0);
    for (int k = 0; k < level_; ++k) {
        phi0_nodes_[k + 1] = phi0_nodes_[k] + alpha_[k] / level_;
        phi1_prefix_[k + 1] = phi1_prefix_[k] + beta_[k] / level_;
    }
    phi0_nodes_[level_] = 0.0;
}

PiecewiseInitialData PiecewiseInitialData::zero(int level) {
    return {level, std::vector<double>(level, 0.0), std::vector<double>(level, 0.0)};
}

int PiecewiseInitialData::folded_cell(double s) const {
    return fold_index(lower_cell_index(s, level_), level_);
}

double PiecewiseInitialData::phi0(double s) const {
    const double r = wrap2(s);
    const bool mirror = r > 1.0;
    const double u = mirror ? 2.0 - r : r;
    const double v = u * level_;
    const int k = std::min(static_cast<int>(v), level_ - 1);
    const double val = phi0_nodes_[k] + (v - k) * (phi0_nodes_[k + 1] - phi0_nodes_[k]);
    return mirror ? -val : val;
}

double PiecewiseInitialData::phi0_prime(double s) const { return alpha_at(folded_cell(s)); }

double PiecewiseInitialData::phi1(double s) const { return beta_at(folded_cell(s)); }

double PiecewiseInitialData::phi1_primitive(double s) const {
    double r = wrap2(s);
    if (r > 1.0) {
        r = 2.0 - r;
    }
    const double v = r * level_;
    const int k = std::min(static_cast<int>(v), level_ - 1);
    return phi1_prefix_[k] + (v - k) * beta_[k] / level_;
}

PiecewiseInitialData project(const RealFunction& phi0, const RealFunction& phi1, int level) {
    if (level < 1) {
        throw std::invalid_argument("project: level must be >= 1");
    }
    if (std::abs(phi0(0.0)) > 1e-12 || std::abs(phi0(1.0)) > 1e-12) {
        throw std::invalid_argument("project: phi0 must vanish at x = 0 and x = 1");
    }
    std::vector<double> alpha(level);
    std::vector<double> beta(level);
    double prev = 0.0;
    for (int i = 1; i <= level; ++i) {
        const double xi = static_cast<double>(i) / level;
        const double cur = i == level ? 0.0 : phi0(xi);
        alpha[i - 1] = (cur - prev) * level;
        prev = cur;
        beta[i - 1] = level * integrate_segment(phi1, xi - 1.0 / level, xi, 8);
    }
    return {level, std::move(alpha), std::move(beta)};
}

double eval_phi(const PiecewiseInitialData& data, double x, double t) {
    return 0.5 * (data.phi0(x + t) + data.phi0(x - t)) +
           0.5 * (data.phi1_primitive(x + t) - data.phi1_primitive(x - t));
}

double eval_phi_t(const PiecewiseInitialData& data, double x, double t) {
    const int L = data.level();
    const int fi = fold_index(lower_cell_index(x + t, L), L);
    const int fj = fold_index(lower_cell_index(x - t, L), L);
    return 0.5 * (data.gamma_at(fi) - data.gamma_at(-fj));
}

double eval_phi_x(const PiecewiseInitialData& data, double x, double t) {
    return 0.5 * (data.phi0_prime(x + t) + data.phi0_prime(x - t)) +
           0.5 * (data.phi1(x + t) - data.phi1(x - t));
}

double v_norm_sq(const PiecewiseInitialData& data) {
    double s = 0.0;
    for (int k = 0; k < data.level(); ++k) {
        s += data.alpha()[k] * data.alpha()[k] + data.beta()[k] * data.beta()[k];
    }
    return s / data.level();
}

double l2_phit_on_squares(const PiecewiseInitialData& data, std::span<const SquareIndex> squares) {
    const int L = data.level();
    double s = 0.0;
    for (const SquareIndex& sq : squares) {
        if (L % sq.n == 0) {
            const int p = L / sq.n;
            for (const SquareIndex& sub : subsquare_indices(sq, p)) {
                const double d = data.gamma_at(fold_index(sub.i, L)) -
                                 data.gamma_at(-fold_index(sub.j, L));
                s += d * d / (8.0 * L * L);
            }
        } else if (sq.n % L == 0) {
            const SquareIndex parent = parent_square(sq, L);
            const double d = data.gamma_at(fold_index(parent.i, L)) -
                             data.gamma_at(-fold_index(parent.j, L));
            s += d * d / (8.0 * sq.n * sq.n);
        } else {
            throw std::invalid_argument("l2_phit_on_squares: incompatible square and data levels");
        }
    }
    return s;
}

double energy(const PiecewiseInitialData& data, double t) {
    const int L = data.level();
    std::vector<double> cuts = {0.0, 1.0};
    const double tl = t * L;
    const auto lo = static_cast<std::int64_t>(std::floor(-tl)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(L + tl)) + 1;
    for (std::int64_t k = lo; k <= hi; ++k) {
        for (double c : {(k - tl) / L, (k + tl) / L}) {
            if (c > 0.0 && c < 1.0) {
                cuts.push_back(c);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double w = cuts[k + 1] - cuts[k];
        if (w <= 0.0) {
            continue;
        }
        const double xm = 0.5 * (cuts[k] + cuts[k + 1]);
        const double px = eval_phi_x(data, xm, t);
        const double pt = eval_phi_t(data, xm, t);
        e += w * (px * px + pt * pt);
    }
    return e;
}

ObservabilityCheck check_discrete_observability_at_level(const PiecewiseInitialData& data,
                                                         const ObservationDomain& domain, int n) {
    const GraphConstant gc = observability_constant_at_level(domain, n);
    const auto squares = squares_in_domain(domain, n);
    ObservabilityCheck out;
    out.n = n;
    out.constant = gc.c_obs;
    out.lhs = v_norm_sq(data);
    out.rhs = gc.c_obs * l2_phit_on_squares(data, squares);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-10);
    return out;
}

ObservabilityCheck check_discrete_observability(const PiecewiseInitialData& data,
                                                const ObservationDomain& domain, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("check_discrete_observability: eps must be > 0");
    }
    return check_discrete_observability_at_level(data, domain,
                                                 static_cast<int>(std::floor(1.0 / eps)) + 1);
}

PiecewiseInitialData random_initial_data(int level, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> alpha(level);
    std::vector<double> beta(level);
    for (int k = 0; k < level; ++k) {
        alpha[k] = u(rng);
        beta[k] = u(rng);
    }
    const double mean = std::accumulate(alpha.begin(), alpha.end(), 0.0) / level;
    for (double& a : alpha) {
        a -= mean;
    }
    return {level, std::move(alpha), std::move(beta)};
}

std::vector<std::vector<double>> leapfrog_reference(const PiecewiseInitialData& data, int m,
                                                    int steps) {
    if (m < 2 || steps < 0) {
        throw std::invalid_argument("leapfrog_reference: need m >= 2 and steps >= 0");
    }
    const double h = 1.0 / m;
    std::vector<std::vector<double>> u(steps + 1, std::vector<double>(m + 1, 0.0));
    for (int i = 1; i < m; ++i) {
        u[0][i] = data.phi0(i * h);
    }
    if (steps >= 1) {
        for (int i = 1; i < m; ++i) {
            const double x = i * h;
            u[1][i] = 0.5 * (u[0][i + 1] + u[0][i - 1]) +
                      0.5 * (data.phi1_primitive(x + h) - data.phi1_primitive(x - h));
        }
    }
    for (int n = 1; n < steps; ++n) {
        for (int i = 1; i < m; ++i) {
            u[n + 1][i] = u[n][i + 1] + u[n][i - 1] - u[n - 1][i];
        }
    }
    return u;
}

}  // namespace waveobs
