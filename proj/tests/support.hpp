#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "waveobs/characteristic_grid.hpp"
#include "waveobs/domain.hpp"
#include "waveobs/obs_graph.hpp"

namespace waveobs::testing {

inline const char* fixture(const char* name) {
    static std::string path;
    path = std::string(WAVEOBS_FIXTURE_DIR) + "/" + name;
    return path.c_str();
}

inline ObservationDomain golden_domain() { return load_domain(fixture("golden_domain.json")); }

/// Random subset of the level-n squares of Q_T whose graph is connected.
inline ObservationDomain random_connected_domain(int n, double horizon, double density,
                                                 std::mt19937_64& rng) {
    const std::vector<SquareIndex> all = squares_in_horizon(n, horizon);
    std::bernoulli_distribution keep(density);
    for (;;) {
        std::set<SquareIndex> pick;
        for (const SquareIndex& s : all) {
            if (keep(rng)) {
                pick.insert(s);
            }
        }
        const std::vector<SquareIndex> v(pick.begin(), pick.end());
        if (!v.empty() && is_connected(build_graph(v, n))) {
            return ObservationDomain::square_union(n, std::move(pick), horizon);
        }
    }
}

/// Closed-square membership in characteristic coordinates.
inline bool point_in_square(const SquareIndex& s, double x, double t, double tol = 1e-12) {
    const double xi = x + t;
    const double zeta = x - t;
    return xi >= interval_lo(s.i, s.n).to_double() - tol &&
           xi <= interval_hi(s.i, s.n).to_double() + tol &&
           zeta >= interval_lo(s.j, s.n).to_double() - tol &&
           zeta <= interval_hi(s.j, s.n).to_double() + tol;
}

/// 2-periodic hat on the nodes k/L, centred at k/L.
inline double periodic_hat(int k, int level, double s) {
    const double c = static_cast<double>(k) / level;
    double d = std::fmod(s - c, 2.0);
    if (d > 1.0) {
        d -= 2.0;
    }
    if (d < -1.0) {
        d += 2.0;
    }
    return std::max(0.0, 1.0 - std::abs(d) * level);
}

inline double periodic_hat_slope(int k, int level, double s) {
    const double c = static_cast<double>(k) / level;
    double d = std::fmod(s - c, 2.0);
    if (d > 1.0) {
        d -= 2.0;
    }
    if (d < -1.0) {
        d += 2.0;
    }
    if (std::abs(d) >= 1.0 / level) {
        return 0.0;
    }
    return d > 0.0 ? -static_cast<double>(level) : static_cast<double>(level);
}

}  // namespace waveobs::testing
