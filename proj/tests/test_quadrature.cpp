#include <doctest.h>

#include <cmath>

#include "waveobs/quadrature.hpp"
#include "waveobs/weight.hpp"

using namespace waveobs;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int order = 1; order <= 12; ++order) {
        for (int deg = 0; deg <= 2 * order - 1; ++deg) {
            const double got =
                integrate_segment([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0, order);
            CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("polygon quadrature is exact to degree 2 order - 2") {
    const Polygon tri = {{0, 0}, {1, 0}, {0, 1}};
    for (int order : {2, 4, 5}) {
        std::vector<QuadPoint> pts;
        polygon_quadrature(tri, order, pts);
        for (int a = 0; a <= 2 * order - 2; ++a) {
            for (int b = 0; a + b <= 2 * order - 2; ++b) {
                double s = 0.0;
                for (const QuadPoint& q : pts) {
                    s += q.w * std::pow(q.x, a) * std::pow(q.t, b);
                }
                // Integral of x^a t^b over the unit simplex is a! b! / (a + b + 2)!.
                const double exact =
                    std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
                CHECK(s == doctest::Approx(exact).epsilon(1e-12));
            }
        }
    }
    const Polygon sq = {{0, 0}, {2, 0}, {2, 1}, {0, 1}};
    CHECK(polygon_area(sq) == doctest::Approx(2.0));
    const Polygon half = clip_halfplane(sq, 1, 0, 1);
    CHECK(polygon_area(half) == doctest::Approx(1.0));
    CHECK(clip_halfplane(sq, 1, 0, -1).empty());
    const Polygon far = {{5, 5}, {6, 5}, {6, 6}, {5, 6}};
    CHECK(convex_polygon_distance(sq, far) == doctest::Approx(std::hypot(3.0, 4.0)));
}

TEST_CASE("smooth cutoff profile") {
    const WeightProfile w(0.15, 0.0375);
    CHECK(w.value(0) == 1.0);
    CHECK(w.value(0.05) == 1.0);
    CHECK(w.value(0.15) == doctest::Approx(0.0));
    CHECK(w.derivative(0.15) == doctest::Approx(0.0));
    CHECK(w.second_derivative(0.15) == doctest::Approx(0.0));
    CHECK(w.derivative(w.plateau()) == doctest::Approx(0.0));
    CHECK(w.second_derivative(w.plateau()) == doctest::Approx(0.0));
    CHECK(w.value(-0.1) == w.value(0.1));
    const double mid = w.plateau() + 0.5 * w.delta();
    CHECK(w.derivative(mid) == doctest::Approx(-15.0 / (8.0 * w.delta())));
    CHECK(w.derivative(-mid) == doctest::Approx(15.0 / (8.0 * w.delta())));
    // Derivative against a central difference.
    for (double s : {0.115, 0.12, 0.13, 0.145}) {
        const double fd = (w.value(s + 1e-7) - w.value(s - 1e-7)) / 2e-7;
        CHECK(w.derivative(s) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK_THROWS((void)WeightProfile(0.1, 0.1));
    CHECK_THROWS((void)WeightProfile(0.1, 0.0));
}
