#pragma once

#include <span>
#include <vector>

#include "waveobs/characteristic_grid.hpp"
#include "waveobs/dense.hpp"

namespace waveobs {

class ObservationDomain;

/// Weighted graph on the folded vertex set {-n..-1, 1..n}. Square (k, -l)
/// contributes one unit of weight to the edge between fold(k) and fold(l).
class ObsGraph {
public:
    explicit ObsGraph(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int order() const { return 2 * n_; }
    /// Vertices are folded indices.
    [[nodiscard]] int degree(int v) const;
    [[nodiscard]] int weight(int u, int v) const;
    void add_edge(int u, int v);

    /// Degrees and weights in matrix position order.
    [[nodiscard]] int degree_at(int pos) const { return degrees_[pos]; }
    [[nodiscard]] int weight_at(int p, int q) const { return weights_[p * order() + q]; }

private:
    int n_;
    std::vector<int> degrees_;
    std::vector<int> weights_;
};

struct SpectralSummary {
    std::vector<double> eigenvalues;
    double lambda = 0.0;      ///< algebraic connectivity
    int min_degree = 0;
};

[[nodiscard]] ObsGraph build_graph(std::span<const SquareIndex> squares, int n);

/// Degrees on the diagonal, minus weights off the diagonal, order (-n..-1, 1..n).
[[nodiscard]] DenseMatrix laplacian(const ObsGraph& g);

/// Sum over squares of (eta_fold(i) - eta_{-fold(j)})^2; eta indexed by position.
[[nodiscard]] double quadratic_form(std::span<const SquareIndex> squares, int n,
                                    std::span<const double> eta);

[[nodiscard]] bool is_connected(const ObsGraph& g);

/// All eigenvalues, ascending.
[[nodiscard]] std::vector<double> spectrum(const DenseMatrix& lap);

/// Second-smallest Laplacian eigenvalue. Throws GocViolation for a disconnected graph.
[[nodiscard]] double algebraic_connectivity(const ObsGraph& g);

/// Diagonal blocks d_i * p * I_p, off-diagonal blocks -w_ij * J_p.
[[nodiscard]] DenseMatrix refined_laplacian(const ObsGraph& g, int p);

struct GraphConstant {
    double c_obs = 0.0;          ///< 4n / min(lambda, min degree)
    double c_obs_uniform = 0.0;  ///< max(4n, 4n / lambda)
    double lambda = 0.0;
    double lambda_hat = 0.0;
    int n = 0;
    std::size_t square_count = 0;
};

/// Level n = floor(1/eps) + 1.
[[nodiscard]] GraphConstant observability_constant_graph(const ObservationDomain& domain,
                                                         double eps);
[[nodiscard]] GraphConstant observability_constant_at_level(const ObservationDomain& domain, int n);

}  // namespace waveobs
