#include "waveobs/obs_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "waveobs/domain.hpp"
#include "waveobs/errors.hpp"

namespace waveobs {

ObsGraph::ObsGraph(int n)
    : n_(n), degrees_(2 * static_cast<std::size_t>(n), 0),
      weights_(4 * static_cast<std::size_t>(n) * n, 0) {
    if (n < 1) {
        throw std::invalid_argument("ObsGraph: level must be >= 1");
    }
}

int ObsGraph::degree(int v) const { return degrees_[vertex_position(v, n_)]; }

int ObsGraph::weight(int u, int v) const {
    return weight_at(vertex_position(u, n_), vertex_position(v, n_));
}

void ObsGraph::add_edge(int u, int v) {
    if (u == v) {
        return;  // a loop carries no energy: (eta_u - eta_u)^2 = 0
    }
    const int p = vertex_position(u, n_);
    const int q = vertex_position(v, n_);
    weights_[p * order() + q] += 1;
    weights_[q * order() + p] += 1;
    degrees_[p] += 1;
    degrees_[q] += 1;
}

ObsGraph build_graph(std::span<const SquareIndex> squares, int n) {
    ObsGraph g(n);
    for (const SquareIndex& s : squares) {
        if (s.n != n) {
            throw std::invalid_argument("build_graph: square level differs from graph level");
        }
        g.add_edge(fold_index(s.i, n), -fold_index(s.j, n));
    }
    return g;
}

DenseMatrix laplacian(const ObsGraph& g) {
    const auto m = static_cast<std::size_t>(g.order());
    DenseMatrix a(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        a(p, p) = g.degree_at(static_cast<int>(p));
        for (std::size_t q = 0; q < m; ++q) {
            if (q != p) {
                a(p, q) = -g.weight_at(static_cast<int>(p), static_cast<int>(q));
            }
        }
    }
    return a;
}

double quadratic_form(std::span<const SquareIndex> squares, int n, std::span<const double> eta) {
    if (eta.size() != 2 * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("quadratic_form: eta must have 2n entries");
    }
    double s = 0.0;
    for (const SquareIndex& sq : squares) {
        const double d = eta[vertex_position(fold_index(sq.i, n), n)] -
                         eta[vertex_position(-fold_index(sq.j, n), n)];
        s += d * d;
    }
    return s;
}

bool is_connected(const ObsGraph& g) {
    const int m = g.order();
    std::vector<char> seen(m, 0);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    int count = 1;
    while (!todo.empty()) {
        const int p = todo.front();
        todo.pop();
        for (int q = 0; q < m; ++q) {
            if (!seen[q] && g.weight_at(p, q) > 0) {
                seen[q] = 1;
                ++count;
                todo.push(q);
            }
        }
    }
    return count == m;
}

std::vector<double> spectrum(const DenseMatrix& lap) { return jacobi_eigen(lap).values; }

double algebraic_connectivity(const ObsGraph& g) {
    if (!is_connected(g)) {
        throw GocViolation("graph disconnected (GOC violated)");
    }
    return spectrum(laplacian(g))[1];
}

DenseMatrix refined_laplacian(const ObsGraph& g, int p) {
    if (p < 1) {
        throw std::invalid_argument("refined_laplacian: p must be >= 1");
    }
    const auto m = static_cast<std::size_t>(g.order());
    const auto pp = static_cast<std::size_t>(p);
    DenseMatrix a(m * pp, m * pp);
    for (std::size_t bi = 0; bi < m; ++bi) {
        for (std::size_t bj = 0; bj < m; ++bj) {
            for (std::size_t r = 0; r < pp; ++r) {
                for (std::size_t c = 0; c < pp; ++c) {
                    double v = 0.0;
                    if (bi == bj) {
                        v = r == c ? static_cast<double>(g.degree_at(static_cast<int>(bi)) * p)
                                   : 0.0;
                    } else {
                        v = -g.weight_at(static_cast<int>(bi), static_cast<int>(bj));
                    }
                    a(bi * pp + r, bj * pp + c) = v;
                }
            }
        }
    }
    return a;
}

GraphConstant observability_constant_at_level(const ObservationDomain& domain, int n) {
    const auto squares = squares_in_domain(domain, n);
    const ObsGraph g = build_graph(squares, n);
    if (!is_connected(g)) {
        throw GocViolation("graph disconnected (GOC violated at this resolution)");
    }
    GraphConstant out;
    out.n = n;
    out.square_count = squares.size();
    out.lambda = spectrum(laplacian(g))[1];
    int dmin = g.degree_at(0);
    for (int k = 1; k < g.order(); ++k) {
        dmin = std::min(dmin, g.degree_at(k));
    }
    out.lambda_hat = std::min(out.lambda, static_cast<double>(dmin));
    out.c_obs = 4.0 * n / out.lambda_hat;
    out.c_obs_uniform = std::max(4.0 * n, 4.0 * n / out.lambda);
    return out;
}

GraphConstant observability_constant_graph(const ObservationDomain& domain, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("observability_constant_graph: eps must be > 0");
    }
    return observability_constant_at_level(domain, static_cast<int>(std::floor(1.0 / eps)) + 1);
}

}  // namespace waveobs
