#include "waveobs/presets.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "waveobs/quadrature.hpp"

namespace waveobs {

namespace {

double bump(double x) {
    if (x < 0.4 || x > 0.6) {
        return 0.0;
    }
    const double a = 10.0 * x - 4.0;
    const double b = 10.0 * x - 6.0;
    return a * a * b * b;
}

double bump_prime(double x) {
    if (x < 0.4 || x > 0.6) {
        return 0.0;
    }
    return 20.0 * (10.0 * x - 4.0) * (10.0 * x - 6.0) * (20.0 * x - 10.0);
}

double zigzag(double x) {
    if (x <= 1.0 / 3.0) {
        return 3.0 * x;
    }
    if (x <= 2.0 / 3.0) {
        return 3.0 * (1.0 - 2.0 * x);
    }
    return -3.0 * (1.0 - x);
}

double zigzag_prime(double x) {
    if (x < 1.0 / 3.0) {
        return 3.0;
    }
    if (x < 2.0 / 3.0) {
        return -6.0;
    }
    return 3.0;
}

struct Table {
    std::vector<double> v;

    [[nodiscard]] double value(double x) const {
        const auto m = static_cast<double>(v.size() - 1);
        const double s = std::clamp(x, 0.0, 1.0) * m;
        const auto k = std::min(static_cast<std::size_t>(s), v.size() - 2);
        const double w = s - static_cast<double>(k);
        return (1.0 - w) * v[k] + w * v[k + 1];
    }
    [[nodiscard]] double slope(double x) const {
        const auto m = static_cast<double>(v.size() - 1);
        const double s = std::clamp(x, 0.0, 1.0) * m;
        const auto k = std::min(static_cast<std::size_t>(s), v.size() - 2);
        return (v[k + 1] - v[k]) * m;
    }
};

}  // namespace

InitialState preset_state(const std::string& name) {
    auto zero = [](double) { return 0.0; };
    if (name == "EX1") {
        return {name, [](double x) { return std::sin(2.0 * std::numbers::pi * x); },
                [](double x) {
                    return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x);
                },
                zero, {}};
    }
    if (name == "EX2") {
        return {name, bump, bump_prime, bump_prime, {0.4, 0.6}};
    }
    if (name == "EX3") {
        return {name, bump, bump_prime, zero, {0.4, 0.6}};
    }
    if (name == "EX4") {
        return {name, zigzag, zigzag_prime, zero, {1.0 / 3.0, 2.0 / 3.0}};
    }
    throw std::invalid_argument("unknown preset: " + name);
}

InitialState tabulated_state(std::vector<double> y0_nodes, std::vector<double> y1_nodes) {
    if (y0_nodes.size() < 2 || y1_nodes.size() < 2) {
        throw std::invalid_argument("tabulated_state: need at least two nodes");
    }
    if (std::abs(y0_nodes.front()) > 1e-12 || std::abs(y0_nodes.back()) > 1e-12) {
        throw std::invalid_argument("tabulated_state: y0 must vanish at both ends");
    }
    auto t0 = std::make_shared<Table>(Table{std::move(y0_nodes)});
    auto t1 = std::make_shared<Table>(Table{std::move(y1_nodes)});
    std::vector<double> cuts;
    for (const auto* t : {t0.get(), t1.get()}) {
        const std::size_t m = t->v.size() - 1;
        for (std::size_t k = 1; k < m; ++k) {
            cuts.push_back(static_cast<double>(k) / static_cast<double>(m));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return {"custom", [t0](double x) { return t0->value(x); },
            [t0](double x) { return t0->slope(x); }, [t1](double x) { return t1->value(x); },
            std::move(cuts)};
}

InitialState zero_state() {
    auto zero = [](double) { return 0.0; };
    return {"zero", zero, zero, zero, {}};
}

double state_v_norm_sq(const InitialState& s) {
    std::vector<double> cuts = {0.0};
    cuts.insert(cuts.end(), s.breakpoints.begin(), s.breakpoints.end());
    cuts.push_back(1.0);
    double total = 0.0;
    constexpr int kPieces = 64;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double w = (cuts[k + 1] - cuts[k]) / kPieces;
        for (int p = 0; p < kPieces; ++p) {
            const double a = cuts[k] + p * w;
            total += integrate_segment(
                [&](double x) {
                    const double d = s.dy0(x);
                    const double v = s.y1(x);
                    return d * d + v * v;
                },
                a, a + w, 8);
        }
    }
    return total;
}

}  // namespace waveobs
