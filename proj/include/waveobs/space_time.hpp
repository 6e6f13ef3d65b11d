#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "waveobs/domain.hpp"
#include "waveobs/quadrature.hpp"
#include "waveobs/weight.hpp"

namespace waveobs {

/// Observation weight on a domain: the indicator of the domain, or the smooth
/// profile chi(x - gamma(t)) for a tube or cylinder.
class SpaceTimeWeight {
public:
    /// Indicator weight.
    explicit SpaceTimeWeight(const ObservationDomain& domain);
    /// Smooth weight; the profile half-width must equal the domain half-width.
    SpaceTimeWeight(const ObservationDomain& domain, const WeightProfile& profile);

    [[nodiscard]] const ObservationDomain& domain() const { return *domain_; }
    [[nodiscard]] const std::optional<WeightProfile>& profile() const { return profile_; }
    [[nodiscard]] bool smooth() const { return profile_.has_value(); }

    /// Quadrature points (weight including the observation weight) of the
    /// intersection of a convex polygon with the weighted domain. The polygon
    /// must lie inside one lattice cell at the square-union level when the
    /// domain is a union of squares.
    void integrate_polygon(const Polygon& poly, int order, std::vector<QuadPoint>& out) const;

    /// Conservative x-range of the support over [t0, t1].
    [[nodiscard]] std::pair<double, double> x_support(double t0, double t1) const;

    [[nodiscard]] double t_begin() const { return t0_; }
    [[nodiscard]] double t_end() const { return t1_; }

private:
    const ObservationDomain* domain_;
    std::optional<WeightProfile> profile_;
    Curve centerline_;
    double half_width_ = 0.0;
    double t0_ = 0.0;
    double t1_ = 0.0;
};

/// Lattice cell of level L in characteristic coordinates:
/// x + t in [a/L, (a+1)/L], x - t in [b/L, (b+1)/L].
struct LatticeCell {
    std::int64_t a = 0;
    std::int64_t b = 0;
};

[[nodiscard]] Polygon cell_polygon(const LatticeCell& c, int level);

/// Cells of level L that may meet the weighted domain inside Q_T.
[[nodiscard]] std::vector<LatticeCell> active_cells(const SpaceTimeWeight& w, int level);

/// Element matrix of one cell for the adjoint basis phi_k = h_k(x+t) - h_k(t-x),
/// with h_k the 2-periodic hat functions on nodes k/L. Indices are hat numbers
/// 0..2L-1; the local basis is (h_a(xi), h_{a+1}(xi), -h_{-b-1}(tau), -h_{-b}(tau)).
struct CellElement {
    std::array<int, 4> hat{};
    std::array<double, 16> m{};
    bool empty = true;
};

[[nodiscard]] CellElement cell_element(const SpaceTimeWeight& w, const LatticeCell& c, int level,
                                       int quad_order);

}  // namespace waveobs
