#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "waveobs/dense.hpp"
#include "waveobs/errors.hpp"
#include "waveobs/power_method.hpp"

using namespace waveobs;

namespace {

StatePair random_pair(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    StatePair y;
    y.first.assign(m + 1, 0.0);
    y.second.assign(m + 1, 0.0);
    for (int i = 1; i < m; ++i) {
        y.first[i] = nd(rng);
        y.second[i] = nd(rng);
    }
    return y;
}

StatePair scaled(const StatePair& y, double a) {
    StatePair z = y;
    for (double& v : z.first) {
        v *= a;
    }
    for (double& v : z.second) {
        v *= a;
    }
    return z;
}

// Lower-triangular solve l x = b.
std::vector<double> forward_sub(const DenseMatrix& l, std::vector<double> b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            b[i] -= l(i, k) * b[k];
        }
        b[i] /= l(i, i);
    }
    return b;
}

// Largest eigenvalue of R Lambda from its matrix on the interior-node basis,
// symmetrised with the Cholesky factor of the V Gram matrix.
double dense_largest(const OperatorContext& ctx) {
    const int m = ctx.level();
    const std::size_t n = 2 * static_cast<std::size_t>(m - 1);
    auto unit = [&](std::size_t k) {
        StatePair e;
        e.first.assign(m + 1, 0.0);
        e.second.assign(m + 1, 0.0);
        if (k < n / 2) {
            e.first[k + 1] = 1.0;
        } else {
            e.second[k - n / 2 + 1] = 1.0;
        }
        return e;
    };
    DenseMatrix mv(n, n);
    DenseMatrix c(n, n);  // M_V B
    std::vector<StatePair> images(n);
    for (std::size_t k = 0; k < n; ++k) {
        images[k] = apply_R_Lambda(ctx, unit(k));
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            mv(r, k) = v_inner(unit(r), unit(k));
            c(r, k) = v_inner(unit(r), images[k]);
        }
    }
    const DenseMatrix l = cholesky(mv);
    // S = L^-1 C L^-T
    DenseMatrix tmp(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = c(r, k);
        }
        col = forward_sub(l, col);
        for (std::size_t r = 0; r < n; ++r) {
            tmp(r, k) = col[r];
        }
    }
    DenseMatrix s(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> row(tmp.row(r).begin(), tmp.row(r).end());
        row = forward_sub(l, row);
        for (std::size_t k = 0; k < n; ++k) {
            s(r, k) = row[k];
        }
    }
    CHECK(s.max_asymmetry() < 1e-8 * std::abs(s(0, 0)) + 1e-12);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = r + 1; k < n; ++k) {
            const double a = 0.5 * (s(r, k) + s(k, r));
            s(r, k) = s(k, r) = a;
        }
    }
    return jacobi_eigen(s).values.back();
}

}  // namespace

TEST_CASE("Poisson solve") {
    const int m = 64;
    std::vector<double> f(m + 1);
    for (int i = 0; i <= m; ++i) {
        f[i] = std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi * i / m);
    }
    const std::vector<double> u = poisson_solve(f, m);
    for (int i = 0; i <= m; ++i) {
        CHECK(std::abs(u[i] - std::sin(std::numbers::pi * i / m)) < 2.0 / (m * m));
    }
    const std::vector<double> one(m + 1, 1.0);
    const std::vector<double> q = poisson_solve(one, m);
    for (int i = 0; i <= m; ++i) {
        const double x = static_cast<double>(i) / m;
        CHECK(q[i] == doctest::Approx(0.5 * x * (1 - x)).epsilon(1e-12).scale(1.0));
    }
    const std::vector<double> zero(m + 1, 0.0);
    CHECK(poisson_solve(zero, m) == zero);
    CHECK_THROWS((void)poisson_solve(std::vector<double>(2, 0.0), 1));
}

TEST_CASE("Riesz map preserves the norm up to discretisation") {
    const int m = 128;
    StatePair w;
    w.kind = StatePair::Kind::W;
    w.first.resize(m + 1);
    w.second.resize(m + 1);
    for (int i = 0; i <= m; ++i) {
        const double x = static_cast<double>(i) / m;
        w.first[i] = std::sin(2 * std::numbers::pi * x);
        w.second[i] = x * (1 - x) * std::cos(3 * x);
    }
    const double nv = state_norm(riesz_map(w));
    const double nw = state_norm(w);
    CHECK(nv == doctest::Approx(nw).epsilon(1e-3));
}

TEST_CASE("R Lambda is linear and self-adjoint") {
    const OperatorContext ctx(waveobs::testing::golden_domain(), 16);
    std::mt19937_64 rng(5);
    StatePair zero;
    zero.first.assign(17, 0.0);
    zero.second.assign(17, 0.0);
    const StatePair z0 = apply_R_Lambda(ctx, zero);
    CHECK(state_norm(z0) == 0.0);
    for (int trial = 0; trial < 3; ++trial) {
        const StatePair y = random_pair(16, rng);
        const StatePair w = random_pair(16, rng);
        const StatePair ry = apply_R_Lambda(ctx, y);
        const StatePair rw = apply_R_Lambda(ctx, w);
        const StatePair r3 = apply_R_Lambda(ctx, scaled(y, 3.0));
        for (int i = 0; i <= 16; ++i) {
            CHECK(r3.first[i] == doctest::Approx(3.0 * ry.first[i]).epsilon(1e-8).scale(1e-6));
            CHECK(r3.second[i] == doctest::Approx(3.0 * ry.second[i]).epsilon(1e-8).scale(1e-6));
        }
        const double a = v_inner(ry, w);
        const double b = v_inner(y, rw);
        CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
    }
    StatePair bad = random_pair(8, rng);
    CHECK_THROWS((void)apply_R_Lambda(ctx, bad));
}

TEST_CASE("power iteration") {
    const OperatorContext ctx(waveobs::testing::golden_domain(), 16);
    StatePair zero;
    zero.first.assign(17, 0.0);
    zero.second.assign(17, 0.0);
    CHECK_THROWS_AS((void)power_iterate(ctx, zero), DegenerateIterate);

    const PowerResult r = power_iterate(ctx, default_power_start(16), 400, 1e-12);
    CHECK(state_norm(default_power_start(16)) == doctest::Approx(1.0));
    // Restarting from the worst datum gives a constant sequence.
    const PowerResult again = power_iterate(ctx, r.worst_datum, 5, 0.0);
    for (double e : again.estimates) {
        CHECK(e == doctest::Approx(r.c_obs).epsilon(1e-6));
    }
    // Sign convention: first significant component positive.
    double lead = 0.0;
    for (double v : r.worst_datum.first) {
        if (lead == 0.0 && std::abs(v) > 1e-9) {
            lead = v;
        }
    }
    CHECK(lead >= 0.0);
}

TEST_CASE("power iteration against a dense eigendecomposition") {
    std::mt19937_64 rng(41);
    std::vector<ObservationDomain> domains = {waveobs::testing::golden_domain()};
    while (domains.size() < 5) {
        domains.push_back(waveobs::testing::random_connected_domain(4, 2.0, 0.5, rng));
    }
    for (const ObservationDomain& d : domains) {
        const OperatorContext ctx(d, 8);
        const double lmax = dense_largest(ctx);
        // Generic start: the default one is even about x = 1/2 and misses odd
        // eigenvectors on symmetric domains.
        const PowerResult r = power_iterate(ctx, random_pair(8, rng), 2000, 1e-13);
        CHECK(r.c_obs == doctest::Approx(lmax).epsilon(1e-6));
        const PowerResult even = power_iterate(ctx, default_power_start(8), 2000, 1e-13);
        CHECK(even.c_obs <= lmax * (1.0 + 1e-9));
        for (std::size_t k = 1; k < r.estimates.size(); ++k) {
            CHECK(r.estimates[k] >= r.estimates[k - 1] * (1.0 - 1e-9));
        }
        // <R Lambda y, y> <= c_obs |y|^2 on random data.
        for (int k = 0; k < 3; ++k) {
            const StatePair y = random_pair(8, rng);
            CHECK(v_inner(apply_R_Lambda(ctx, y), y) <= lmax * v_inner(y, y) * (1.0 + 1e-8));
        }
    }
}
