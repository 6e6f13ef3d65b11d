#pragma once

#include <functional>
#include <random>
#include <span>
#include <vector>

#include "waveobs/characteristic_grid.hpp"

namespace waveobs {

class ObservationDomain;

/// Initial data (phi0, phi1) with phi0 continuous and affine on the cells of
/// level L (slopes alpha) and phi1 constant on them (values beta). Extended
/// odd and 2-periodic in space.
class PiecewiseInitialData {
public:
    PiecewiseInitialData(int level, std::vector<double> alpha, std::vector<double> beta);

    static PiecewiseInitialData zero(int level);

    [[nodiscard]] int level() const { return level_; }
    [[nodiscard]] std::span<const double> alpha() const { return alpha_; }
    [[nodiscard]] std::span<const double> beta() const { return beta_; }

    /// Coefficients on folded indices in {-L..-1, 1..L}.
    [[nodiscard]] double alpha_at(int folded) const { return alpha_[std::abs(folded) - 1]; }
    [[nodiscard]] double beta_at(int folded) const {
        return folded > 0 ? beta_[folded - 1] : -beta_[-folded - 1];
    }
    [[nodiscard]] double gamma_at(int folded) const { return alpha_at(folded) + beta_at(folded); }

    /// Extended phi0, its derivative, extended phi1 and the even primitive of phi1.
    [[nodiscard]] double phi0(double s) const;
    [[nodiscard]] double phi0_prime(double s) const;
    [[nodiscard]] double phi1(double s) const;
    [[nodiscard]] double phi1_primitive(double s) const;

    /// phi0 at node k/L, k = 0..L.
    [[nodiscard]] std::span<const double> phi0_nodes() const { return phi0_nodes_; }

private:
    [[nodiscard]] int folded_cell(double s) const;

    int level_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> phi0_nodes_;
    std::vector<double> phi1_prefix_;
};

using RealFunction = std::function<double(double)>;

/// alpha_i = L (phi0(x_i) - phi0(x_{i-1})), beta_i = L * integral of phi1 over cell i.
[[nodiscard]] PiecewiseInitialData project(const RealFunction& phi0, const RealFunction& phi1,
                                           int level);

/// Exact d'Alembert solution of the extended data.
[[nodiscard]] double eval_phi(const PiecewiseInitialData& data, double x, double t);
/// 0.5 * (gamma_fold(i) - gamma_{-fold(j)}) on square (i, j). On lattice lines
/// the square with the smaller index is used.
[[nodiscard]] double eval_phi_t(const PiecewiseInitialData& data, double x, double t);
[[nodiscard]] double eval_phi_x(const PiecewiseInitialData& data, double x, double t);

/// (1/L) * sum(alpha^2 + beta^2)
[[nodiscard]] double v_norm_sq(const PiecewiseInitialData& data);

/// Exact integral of phi_t^2 over a union of elementary squares.
[[nodiscard]] double l2_phit_on_squares(const PiecewiseInitialData& data,
                                        std::span<const SquareIndex> squares);

/// Integral over [0,1] of phi_x^2 + phi_t^2 at time t (exact).
[[nodiscard]] double energy(const PiecewiseInitialData& data, double t);

struct ObservabilityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    int n = 0;
    bool holds = false;
};

/// lhs = V-norm squared, rhs = C * integral of phi_t^2 over the level-n cover,
/// where C is the graph constant at level n = floor(1/eps) + 1.
[[nodiscard]] ObservabilityCheck check_discrete_observability(const PiecewiseInitialData& data,
                                                              const ObservationDomain& domain,
                                                              double eps);
[[nodiscard]] ObservabilityCheck check_discrete_observability_at_level(
    const PiecewiseInitialData& data, const ObservationDomain& domain, int n);

/// Coefficients uniform in [-1, 1], alpha shifted to zero mean.
[[nodiscard]] PiecewiseInitialData random_initial_data(int level, std::mt19937_64& rng);

/// Three-level scheme with dt = dx = 1/m; rows are time steps 0..steps,
/// columns nodes 0..m. The first step uses the exact half-step formula.
[[nodiscard]] std::vector<std::vector<double>> leapfrog_reference(const PiecewiseInitialData& data,
                                                                  int m, int steps);

}  // namespace waveobs
