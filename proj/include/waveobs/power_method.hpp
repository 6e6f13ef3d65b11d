#pragma once

#include <span>
#include <vector>

#include "waveobs/dense.hpp"
#include "waveobs/domain.hpp"

namespace waveobs {

/// Pair of nodal grid functions on [0,1] (m+1 nodes, both vanishing at the
/// ends). Kind V: (H^1_0, L^2); kind W: (L^2, H^-1).
struct StatePair {
    enum class Kind { V, W };
    Kind kind = Kind::V;
    std::vector<double> first;
    std::vector<double> second;

    [[nodiscard]] int m() const { return static_cast<int>(first.size()) - 1; }
};

/// -u'' = f with u(0) = u(1) = 0 by the three-point scheme; f and u are nodal (m+1 values).
[[nodiscard]] std::vector<double> poisson_solve(std::span<const double> f, int m);

/// P1 norms; W uses the discrete inverse Laplacian for H^-1.
[[nodiscard]] double v_inner(const StatePair& a, const StatePair& b);
[[nodiscard]] double state_norm(const StatePair& s);

/// R(phi0, phi1) = ((-d^2/dx^2)^{-1} phi1, -phi0) for a nodal W pair.
[[nodiscard]] StatePair riesz_map(const StatePair& w);

/// Duality operator context: indicator-weight Gram on a domain at level L, with
/// the state grid tied to the same level.
class OperatorContext {
public:
    OperatorContext(ObservationDomain domain, int level, int quad_order = 5, double tol = 1e-10);

    [[nodiscard]] const ObservationDomain& domain() const { return domain_; }
    [[nodiscard]] int level() const { return level_; }
    [[nodiscard]] const DenseMatrix& gram() const { return gram_; }
    [[nodiscard]] double tol() const { return tol_; }

private:
    ObservationDomain domain_;
    int level_;
    double tol_;
    DenseMatrix gram_;
};

/// z = R Lambda y: HUM minimiser (phi0, phi1) for the data y, then
/// R(phi0, phi1) = ((-d^2/dx^2)^{-1} phi1, -phi0).
[[nodiscard]] StatePair apply_R_Lambda(const OperatorContext& ctx, const StatePair& y);

struct PowerResult {
    std::vector<double> estimates;
    double c_obs = 0.0;
    StatePair worst_datum;
    bool converged = false;
};

[[nodiscard]] PowerResult power_iterate(const OperatorContext& ctx, const StatePair& y_init,
                                        int max_iters = 50, double tol = 1e-4);

/// K (x(1-x), 0) on the context grid, normalised in V.
[[nodiscard]] StatePair default_power_start(int m);

}  // namespace waveobs
