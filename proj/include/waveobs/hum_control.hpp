#pragma once

#include <optional>
#include <span>
#include <vector>

#include "waveobs/dalembert.hpp"
#include "waveobs/dense.hpp"
#include "waveobs/domain.hpp"
#include "waveobs/presets.hpp"
#include "waveobs/weight.hpp"

namespace waveobs {

/// Adjoint states are phi(x,t) = f(x+t) - f(t-x) with f 2-periodic and
/// piecewise affine on the nodes k/L. The constant is removed by the gauge
/// f(0) = 0, leaving the 2L-1 hats k = 1..2L-1 as basis.
[[nodiscard]] inline std::size_t hum_basis_size(int level) {
    return 2 * static_cast<std::size_t>(level) - 1;
}

/// Converts hat coefficients (hats 1..2L-1) into the initial data of phi.
[[nodiscard]] PiecewiseInitialData adjoint_initial_data(std::span<const double> z, int level);

struct HumConfig {
    int level = 64;
    int quad_order = 5;
    double tol = 1e-10;
    bool parallel = true;
};

/// Gram matrix of the basis over the weighted domain (size 2L-1).
[[nodiscard]] DenseMatrix assemble_gram(const ObservationDomain& domain,
                                        const std::optional<WeightProfile>& weight, int level,
                                        int quad_order, bool parallel = true);

/// b_k = <psi1_k, y0> - <psi0_k, y1>.
[[nodiscard]] std::vector<double> assemble_rhs(const InitialState& state, int level);

struct HumSystem {
    DenseMatrix gram;
    std::vector<double> rhs;
};

[[nodiscard]] HumSystem assemble_hum_system(const ObservationDomain& domain,
                                            const std::optional<WeightProfile>& weight,
                                            const InitialState& state, const HumConfig& cfg);

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients; relative residual target `tol`,
/// at most `max_iter` iterations (default 10 * size). Throws IllConditionedHum
/// when the target is not reached.
[[nodiscard]] CgResult pcg_solve(const DenseMatrix& a, std::span<const double> b, double tol,
                                 int max_iter = 0);

struct HumSolution {
    int level = 0;
    std::vector<double> z;
    double cost = 0.0;
    int iterations = 0;
    double residual = 0.0;
    ObservationDomain domain;
    std::optional<WeightProfile> weight;
    PiecewiseInitialData adjoint = PiecewiseInitialData::zero(1);
};

[[nodiscard]] HumSolution solve_hum(const ObservationDomain& domain,
                                    const std::optional<WeightProfile>& weight,
                                    const InitialState& state, const HumConfig& cfg = {});
/// Solve with a precomputed Gram matrix.
[[nodiscard]] HumSolution solve_hum_system(const ObservationDomain& domain,
                                           const std::optional<WeightProfile>& weight,
                                           const DenseMatrix& gram, std::span<const double> rhs,
                                           int level, double tol);

/// Adjoint state inside the domain, zero outside.
[[nodiscard]] double control_eval(const HumSolution& sol, double x, double t);

struct ForwardResult {
    double ratio = 0.0;
    double terminal_norm = 0.0;
    double initial_norm = 0.0;
    int grid_m = 0;
    int steps = 0;
    /// Nodal values u[n][i] at t = n/m, n = 0..steps+1.
    std::vector<std::vector<double>> trajectory;
};

/// Solves y_tt - y_xx = v * weight with y(0) = (y0, y1) by the exact-diamond
/// three-level scheme (dt = dx = 1/grid_m) and returns the V-norm of the
/// terminal state relative to the initial one. With controlled == false the
/// source is omitted.
[[nodiscard]] ForwardResult forward_verify(const HumSolution& sol, const InitialState& state,
                                           int grid_m, bool controlled = true);

}  // namespace waveobs
