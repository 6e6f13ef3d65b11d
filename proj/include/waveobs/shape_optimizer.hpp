#pragma once

#include <string>
#include <vector>

#include "waveobs/domain.hpp"
#include "waveobs/hum_control.hpp"
#include "waveobs/presets.hpp"
#include "waveobs/weight.hpp"

namespace waveobs {

struct CurveStart {
    /// "constant", "cosine" (1/2 + cos(pi t / T) / 10) or "values".
    std::string kind = "constant";
    double value = 0.5;
    std::vector<double> values;
};

[[nodiscard]] Curve make_initial_curve(const CurveStart& start, double horizon,
                                       std::size_t intervals);

struct OptimizerConfig {
    std::string preset = "EX2";
    double horizon = 2.0;
    double eps_reg = 1e-2;
    double rho = 1e-4;
    std::size_t curve_intervals = 128;
    int level = 64;
    int quad_order = 5;
    double tol = 1e-10;
    double delta0 = 0.15;
    double delta = 0.15 / 4.0;
    int p = 10;
    double eta = 1e-3;
    int max_iters = 500;
    CurveStart gamma0;

    [[nodiscard]] WeightProfile profile() const { return {delta0, delta}; }
    [[nodiscard]] HumConfig hum() const { return {level, quad_order, tol, true}; }
};

struct CostResult {
    double j_eps = 0.0;
    double j = 0.0;
    HumSolution hum;
};

[[nodiscard]] CostResult cost(const Curve& curve, const InitialState& state, double eps_reg,
                              const WeightProfile& profile, const HumConfig& cfg);

/// j(t) = integral over x of phi^2 chi'(x - gamma(t)) at one time.
[[nodiscard]] double shape_density_at(const Curve& curve, const HumSolution& hum,
                                      const WeightProfile& profile, double t);
/// j at the curve nodes.
[[nodiscard]] std::vector<double> shape_derivative_density(const Curve& curve,
                                                           const HumSolution& hum,
                                                           const WeightProfile& profile);
/// l_i = integral of j(t) L_i(t) dt for the nodal hat functions L_i.
[[nodiscard]] std::vector<double> shape_derivative_load(const Curve& curve, const HumSolution& hum,
                                                        const WeightProfile& profile);

/// Solves (M + eps K) j_eps = load + eps K gamma in P1 on the curve nodes
/// (natural boundary conditions).
[[nodiscard]] std::vector<double> h1_smooth_load(const std::vector<double>& load,
                                                 const Curve& curve, double eps_reg);
/// Same with load = M j for nodal samples j.
[[nodiscard]] std::vector<double> h1_smooth(const std::vector<double>& j_values,
                                            const Curve& curve, double eps_reg);

/// Nodal P1 mass and stiffness products.
[[nodiscard]] std::vector<double> mass_apply(const std::vector<double>& v, double dt);
[[nodiscard]] std::vector<double> stiffness_apply(const std::vector<double>& v, double dt);

[[nodiscard]] Curve descent_step(const Curve& curve, const std::vector<double>& direction,
                                 double rho, double delta0);

/// |mean(J[n..n+p-1]) - mean(J[n-p..n-1])| / J[0]
[[nodiscard]] double stopping_delta(const std::vector<double>& costs, std::size_t n, int p);

struct DescentRecord {
    int iteration = 0;
    double j_eps = 0.0;
    double j = 0.0;
    double delta_j = -1.0;  ///< negative until enough history exists
    double direction_norm = 0.0;
    double descent_rate = 0.0;  ///< dJ_eps(gamma; j_eps)
    double lipschitz = 0.0;
    std::vector<double> curve;
};

struct DescentTrace {
    std::vector<DescentRecord> records;
    bool converged = false;
    std::string error;
    [[nodiscard]] const DescentRecord& last() const { return records.back(); }
};

[[nodiscard]] DescentTrace optimize(const OptimizerConfig& cfg, const InitialState& state);

struct SweepResult {
    double best_x0 = 0.0;
    double best_j = 0.0;
    std::vector<std::pair<double, double>> table;
};

/// 13 equidistant centres in [0.2, 0.8].
[[nodiscard]] std::vector<double> default_sweep_grid();

[[nodiscard]] SweepResult cylindrical_sweep(const InitialState& state,
                                            const std::vector<double>& grid,
                                            const OptimizerConfig& cfg);

[[nodiscard]] inline double performance_index(double j_opt, double j_cyl_min) {
    return 100.0 * (1.0 - j_opt / j_cyl_min);
}

}  // namespace waveobs
