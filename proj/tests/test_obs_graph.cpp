#include <doctest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "waveobs/errors.hpp"
#include "waveobs/obs_graph.hpp"

using namespace waveobs;

namespace {

const int kGolden[8][8] = {
    {4, 0, 0, -2, -2, 0, 0, 0},     {0, 4, 0, -2, -2, 0, 0, 0},     {0, 0, 4, -2, -2, 0, 0, 0},
    {-2, -2, -2, 13, -1, -2, -2, -2}, {-2, -2, -2, -1, 13, -2, -2, -2}, {0, 0, 0, -2, -2, 4, 0, 0},
    {0, 0, 0, -2, -2, 0, 4, 0},     {0, 0, 0, -2, -2, 0, 0, 4}};

std::vector<SquareIndex> golden_squares() {
    return squares_in_domain(waveobs::testing::golden_domain(), 4);
}

}  // namespace

TEST_CASE("golden Laplacian is reproduced exactly") {
    const DenseMatrix a = laplacian(build_graph(golden_squares(), 4));
    REQUIRE(a.rows() == 8);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            CHECK(a(r, c) == kGolden[r][c]);
        }
    }
}

TEST_CASE("graph edge cases") {
    const ObsGraph empty = build_graph({}, 4);
    CHECK(laplacian(empty) == DenseMatrix(8, 8));
    CHECK_FALSE(is_connected(empty));
    const std::vector<double> z = spectrum(laplacian(empty));
    CHECK(std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; }));

    const std::vector<SquareIndex> one = {{2, 1, 4}};
    const ObsGraph g = build_graph(one, 4);
    CHECK(g.weight(2, -1) == 1);
    CHECK(g.weight(-1, 2) == 1);
    CHECK(g.degree(2) == 1);
    CHECK(g.degree(-1) == 1);
    int total = 0;
    for (int p = 0; p < 8; ++p) {
        total += g.degree_at(p);
    }
    CHECK(total == 2);
    CHECK_THROWS_AS((void)algebraic_connectivity(g), GocViolation);

    const std::vector<SquareIndex> mixed = {{2, 1, 4}, {2, 1, 8}};
    CHECK_THROWS((void)build_graph(mixed, 4));
}

TEST_CASE("quadratic form") {
    const std::vector<SquareIndex> sq = golden_squares();
    const DenseMatrix a = laplacian(build_graph(sq, 4));
    const std::vector<double> ones(8, 1.0);
    CHECK(quadratic_form(sq, 4, ones) == doctest::Approx(0.0));
    std::vector<double> e(8, 0.0);
    e[vertex_position(1, 4)] = 1.0;
    CHECK(quadratic_form(sq, 4, e) == doctest::Approx(13.0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> eta(8);
        for (double& v : eta) {
            v = nd(rng);
        }
        // Direct summation over squares, independent of the graph code.
        double direct = 0.0;
        for (const SquareIndex& s : sq) {
            const int p = vertex_position(fold_index(s.i, 4), 4);
            const int q = vertex_position(-fold_index(s.j, 4), 4);
            direct += (eta[p] - eta[q]) * (eta[p] - eta[q]);
        }
        CHECK(quadratic_form(sq, 4, eta) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(dot(eta, a.multiply(eta)) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("spectra") {
    const DenseMatrix a = laplacian(build_graph(golden_squares(), 4));
    const std::vector<double> s = spectrum(a);
    const double expect[8] = {0, 4, 4, 4, 4, 4, 14, 16};
    for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(s[k] - expect[k]) < 1e-10);
    }
    DenseMatrix b(2, 2);
    b(0, 0) = 1;
    b(0, 1) = -1;
    b(1, 0) = -1;
    b(1, 1) = 1;
    const std::vector<double> sb = spectrum(b);
    CHECK(std::abs(sb[0]) < 1e-14);
    CHECK(sb[1] == doctest::Approx(2.0));

    ObsGraph k2(1);
    k2.add_edge(1, -1);
    CHECK(algebraic_connectivity(k2) == doctest::Approx(2.0));
    CHECK(algebraic_connectivity(build_graph(golden_squares(), 4)) == doctest::Approx(4.0));
}

TEST_CASE("Jacobi eigenvalues agree with the characteristic polynomial of a 3x3") {
    // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
    DenseMatrix m(3, 3);
    for (int i = 0; i < 3; ++i) {
        m(i, i) = 2;
    }
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = -1;
    const EigenDecomposition e = jacobi_eigen(m, true);
    CHECK(e.values[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(e.values[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-13));
    for (int k = 0; k < 3; ++k) {
        std::vector<double> v = {e.vectors(0, k), e.vectors(1, k), e.vectors(2, k)};
        const std::vector<double> mv = m.multiply(v);
        for (int i = 0; i < 3; ++i) {
            CHECK(mv[i] == doctest::Approx(e.values[k] * v[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("Mohar bound and connectivity on random domains") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 4;
        const ObservationDomain d = waveobs::testing::random_connected_domain(n, 2.0, 0.4, rng);
        const ObsGraph g = build_graph(squares_in_domain(d, n), n);
        CHECK(is_connected(g));
        const double lambda = algebraic_connectivity(g);
        int dmin = g.degree_at(0);
        for (int p = 0; p < g.order(); ++p) {
            dmin = std::min(dmin, g.degree_at(p));
        }
        // Weighted diameter bound with D_G <= number of vertices.
        CHECK(lambda >= 4.0 / (g.order() * g.order()) - 1e-12);
        const GraphConstant c = observability_constant_at_level(d, n);
        CHECK(c.c_obs <= 4.0 * n * n * n + 1e-9);
        CHECK(c.c_obs == doctest::Approx(4.0 * n / std::min<double>(lambda, dmin)));
        CHECK(c.lambda_hat <= c.lambda + 1e-12);
    }
}

TEST_CASE("refined Laplacian") {
    const ObsGraph g = build_graph(golden_squares(), 4);
    CHECK(refined_laplacian(g, 1) == laplacian(g));
    const DenseMatrix r = refined_laplacian(g, 2);
    REQUIRE(r.rows() == 16);
    // Block (P, Q) is d_P * p * I_p on the diagonal and -w_PQ * J_p elsewhere.
    for (int P = 0; P < 8; ++P) {
        for (int Q = 0; Q < 8; ++Q) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double want =
                        P == Q ? (a == b ? 2.0 * kGolden[P][P] : 0.0) : kGolden[P][Q];
                    CHECK(r(2 * P + a, 2 * Q + b) == want);
                }
            }
        }
    }
}

TEST_CASE("spectrum of the refined graph splits into A and repeated degrees") {
    std::mt19937_64 rng(23);
    std::vector<ObservationDomain> domains = {waveobs::testing::golden_domain()};
    for (int k = 0; k < 4; ++k) {
        domains.push_back(waveobs::testing::random_connected_domain(3 + k, 2.0, 0.35, rng));
    }
    for (const ObservationDomain& d : domains) {
        const int n = d.as<SquareUnion>()->level;
        const ObsGraph g = build_graph(squares_in_domain(d, n), n);
        const std::vector<double> base = spectrum(laplacian(g));
        for (int p : {2, 3}) {
            const ObsGraph gp = build_graph(squares_in_domain(d, p * n), p * n);
            std::vector<double> got = spectrum(laplacian(gp));
            for (double& v : got) {
                v /= p;
            }
            std::vector<double> want = base;
            for (int pos = 0; pos < g.order(); ++pos) {
                for (int r = 0; r < p - 1; ++r) {
                    want.push_back(g.degree_at(pos));
                }
            }
            std::sort(want.begin(), want.end());
            REQUIRE(got.size() == want.size());
            for (std::size_t k = 0; k < got.size(); ++k) {
                CHECK(std::abs(got[k] - want[k]) < 1e-8);
            }
        }
    }
}

TEST_CASE("observability constant") {
    const ObservationDomain d = waveobs::testing::golden_domain();
    const GraphConstant c = observability_constant_at_level(d, 4);
    CHECK(c.c_obs == doctest::Approx(4.0));
    CHECK(c.lambda == doctest::Approx(4.0));
    CHECK(c.n == 4);
    CHECK(c.square_count == 25);
    // eps in (1/4, 1/3] selects level 4.
    CHECK(observability_constant_graph(d, 0.3).n == 4);
    const ObservationDomain single =
        ObservationDomain::square_union(4, {SquareIndex{2, 1, 4}}, 2.0);
    CHECK_THROWS_AS((void)observability_constant_at_level(single, 4), GocViolation);
}
