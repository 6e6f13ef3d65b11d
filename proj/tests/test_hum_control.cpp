#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "waveobs/errors.hpp"
#include "waveobs/hum_control.hpp"
#include "waveobs/kernels.hpp"
#include "waveobs/quadrature.hpp"
#include "waveobs/space_time.hpp"

using namespace waveobs;
using waveobs::testing::periodic_hat;
using waveobs::testing::periodic_hat_slope;

namespace {

double basis_phi(int k, int L, double x, double t) {
    return periodic_hat(k, L, x + t) - periodic_hat(k, L, t - x);
}

// Indicator Gram over a square union by tensor Gauss in (xi, zeta) on every
// level-L sub-square, where each basis function is affine in xi and in zeta.
DenseMatrix brute_gram_union(const ObservationDomain& d, int L) {
    const auto* u = d.as<SquareUnion>();
    const std::size_t n = 2 * static_cast<std::size_t>(L) - 1;
    DenseMatrix g(n, n);
    const GaussRule& r = gauss_rule(3);
    std::vector<double> phi(n);
    for (const SquareIndex& s : u->squares) {
        for (const SquareIndex& q : subsquare_indices(s, L / u->level)) {
            const double a = interval_lo(q.i, L).to_double();
            const double c = interval_lo(q.j, L).to_double();
            for (std::size_t p = 0; p < r.nodes.size(); ++p) {
                for (std::size_t m = 0; m < r.nodes.size(); ++m) {
                    const double xi = a + r.nodes[p] / L;
                    const double ze = c + r.nodes[m] / L;
                    const double w = r.weights[p] * r.weights[m] / (L * L) * 0.5;
                    const double x = 0.5 * (xi + ze);
                    const double t = 0.5 * (xi - ze);
                    for (std::size_t k = 0; k < n; ++k) {
                        phi[k] = basis_phi(static_cast<int>(k) + 1, L, x, t);
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        for (std::size_t l = 0; l < n; ++l) {
                            g(k, l) += w * phi[k] * phi[l];
                        }
                    }
                }
            }
        }
    }
    return g;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

}  // namespace

TEST_CASE("adjoint initial data matches direct basis summation") {
    const int L = 5;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> z(hum_basis_size(L));
    for (double& v : z) {
        v = nd(rng);
    }
    const PiecewiseInitialData d = adjoint_initial_data(z, L);
    for (double x : {0.05, 0.31, 0.5, 0.77, 0.93}) {
        for (double t : {0.0, 0.17, 0.8, 1.43}) {
            double direct = 0.0;
            for (std::size_t k = 0; k < z.size(); ++k) {
                direct += z[k] * basis_phi(static_cast<int>(k) + 1, L, x, t);
            }
            CHECK(eval_phi(d, x, t) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("indicator Gram on a square union matches tensor quadrature") {
    const ObservationDomain d = waveobs::testing::golden_domain();
    for (int L : {4, 8}) {
        const DenseMatrix g = assemble_gram(d, std::nullopt, L, 5, false);
        const DenseMatrix b = brute_gram_union(d, L);
        CHECK(max_abs_diff(g, b) < 1e-12);
        CHECK(g.max_asymmetry() < 1e-15);
    }
    CHECK_THROWS((void)assemble_gram(d, std::nullopt, 6, 5));
}

TEST_CASE("smooth-weight Gram on a cylinder matches fine composite quadrature") {
    const int L = 4;
    const WeightProfile prof(0.15, 0.0375);
    const ObservationDomain d = ObservationDomain::cylinder(0.45, 0.15, 1.0);
    const DenseMatrix g = assemble_gram(d, prof, L, 5, false);
    const std::size_t n = hum_basis_size(L);
    DenseMatrix b(n, n);
    const int nx = 96;
    const int nt = 320;
    const GaussRule& r = gauss_rule(6);
    std::vector<double> phi(n);
    for (int ix = 0; ix < nx; ++ix) {
        for (int it = 0; it < nt; ++it) {
            const double x0 = 0.3 + 0.3 * ix / nx;
            const double t0 = 1.0 * it / nt;
            for (std::size_t p = 0; p < r.nodes.size(); ++p) {
                for (std::size_t q = 0; q < r.nodes.size(); ++q) {
                    const double x = x0 + 0.3 / nx * r.nodes[p];
                    const double t = t0 + 1.0 / nt * r.nodes[q];
                    const double w = r.weights[p] * r.weights[q] * 0.3 / nx / nt *
                                     prof.value(x - 0.45);
                    for (std::size_t k = 0; k < n; ++k) {
                        phi[k] = basis_phi(static_cast<int>(k) + 1, L, x, t);
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        for (std::size_t l = 0; l < n; ++l) {
                            b(k, l) += w * phi[k] * phi[l];
                        }
                    }
                }
            }
        }
    }
    CHECK(max_abs_diff(g, b) < 2e-6);
}

TEST_CASE("Gram assembly: serial and OpenMP agree bitwise, PSD on random tubes") {
    const WeightProfile prof(0.15, 0.0375);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> v(9);
        for (double& x : v) {
            x = u(rng);
        }
        const ObservationDomain d = ObservationDomain::tube(Curve(2.0, v), 0.15);
        const SpaceTimeWeight w(d, prof);
        const DenseMatrix s = assemble_gram_serial(w, 8, 5);
        const DenseMatrix p = assemble_gram_omp(w, 8, 5);
        CHECK(s == p);
        const DenseMatrix g = assemble_gram(d, prof, 8, 5);
        CHECK(jacobi_eigen(g).values.front() >= -1e-10);
    }
}

TEST_CASE("right-hand side matches direct quadrature") {
    CHECK(assemble_rhs(zero_state(), 6) == std::vector<double>(hum_basis_size(6), 0.0));
    for (const char* name : {"EX1", "EX2", "EX4"}) {
        const InitialState st = preset_state(name);
        const int L = 6;
        const std::vector<double> b = assemble_rhs(st, L);
        const int pieces = 120;  // multiple of 4L and of 3 and 5
        for (int k = 1; k < 2 * L; ++k) {
            double s = 0.0;
            for (int p = 0; p < pieces; ++p) {
                s += integrate_segment(
                    [&](double x) {
                        const double psi0 = periodic_hat(k, L, x) - periodic_hat(k, L, -x);
                        const double psi1 =
                            periodic_hat_slope(k, L, x) - periodic_hat_slope(k, L, -x);
                        return psi1 * st.y0(x) - psi0 * st.y1(x);
                    },
                    static_cast<double>(p) / pieces, static_cast<double>(p + 1) / pieces, 10);
            }
            CHECK(b[k - 1] == doctest::Approx(s).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("preconditioned CG") {
    DenseMatrix a(3, 3);
    a(0, 0) = 4;
    a(0, 1) = a(1, 0) = 1;
    a(1, 1) = 3;
    a(1, 2) = a(2, 1) = -1;
    a(2, 2) = 2;
    const std::vector<double> b = {1, 2, 3};
    const CgResult r = pcg_solve(a, b, 1e-12);
    const std::vector<double> x = cholesky_solve(cholesky(a), b);
    for (int k = 0; k < 3; ++k) {
        CHECK(r.x[k] == doctest::Approx(x[k]).epsilon(1e-10));
    }
    DenseMatrix bad(2, 2);
    bad(0, 0) = 1;
    bad(1, 1) = -1;
    const std::vector<double> rhs = {1, 1};
    CHECK_THROWS_AS((void)pcg_solve(bad, rhs, 1e-10), IllConditionedHum);
    const std::vector<double> zero = {0, 0};
    CHECK(pcg_solve(bad, zero, 1e-10).x == zero);
}

TEST_CASE("HUM on the EX1 cylinder") {
    const WeightProfile prof(0.15, 0.0375);
    const ObservationDomain d = ObservationDomain::cylinder(0.25, 0.15, 2.0);
    HumConfig cfg;
    cfg.level = 64;
    const HumSolution zero = solve_hum(d, prof, zero_state(), cfg);
    CHECK(zero.cost == 0.0);
    CHECK(std::all_of(zero.z.begin(), zero.z.end(), [](double v) { return v == 0.0; }));

    const InitialState st = preset_state("EX1");
    const HumSystem sys = assemble_hum_system(d, prof, st, cfg);
    const HumSolution sol = solve_hum_system(d, prof, sys.gram, sys.rhs, cfg.level, cfg.tol);
    CHECK(sol.cost == doctest::Approx(46.94).epsilon(0.10));
    const std::vector<double> gz = sys.gram.multiply(sol.z);
    CHECK(dot(sol.z, gz) == doctest::Approx(dot(sys.rhs, sol.z)).epsilon(1e-8));

    CHECK(control_eval(sol, 0.6, 1.0) == 0.0);
    for (double x : {0.15, 0.25, 0.33}) {
        double direct = 0.0;
        for (std::size_t k = 0; k < sol.z.size(); ++k) {
            direct += sol.z[k] * basis_phi(static_cast<int>(k) + 1, 64, x, 0.9);
        }
        CHECK(control_eval(sol, x, 0.9) == doctest::Approx(direct).epsilon(1e-12));
    }

    const ForwardResult free_run = forward_verify(sol, st, 256, false);
    CHECK(free_run.ratio == doctest::Approx(1.0).epsilon(1e-3));
    const ForwardResult ctrl = forward_verify(sol, st, 256);
    CHECK(ctrl.ratio <= 5e-2);
    cfg.level = 32;
    const HumSolution coarse = solve_hum(d, prof, st, cfg);
    CHECK(forward_verify(coarse, st, 256).ratio > ctrl.ratio);

    const ForwardResult none = forward_verify(zero, zero_state(), 64);
    CHECK(none.ratio == 0.0);
    CHECK_THROWS((void)forward_verify(sol, st, 100));
}
