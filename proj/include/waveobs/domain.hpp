#pragma once

#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "waveobs/characteristic_grid.hpp"

namespace waveobs {

/// Piecewise-affine curve on a uniform time grid t_i = i*T/(nodes-1).
class Curve {
public:
    Curve() = default;
    Curve(double horizon, std::vector<double> values);

    static Curve constant(double horizon, std::size_t intervals, double value);

    [[nodiscard]] double horizon() const { return horizon_; }
    [[nodiscard]] std::size_t intervals() const { return values_.size() - 1; }
    [[nodiscard]] double dt() const { return horizon_ / static_cast<double>(intervals()); }
    [[nodiscard]] double time(std::size_t i) const { return dt() * static_cast<double>(i); }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::vector<double>& mutable_values() { return values_; }

    /// Linear interpolation; clamps t to [0, T].
    [[nodiscard]] double operator()(double t) const;
    /// Min and max of the curve over [t0, t1] (exact: extrema sit at nodes or ends).
    [[nodiscard]] std::pair<double, double> range(double t0, double t1) const;
    /// max_i |gamma_i - gamma_{i-1}| / dt
    [[nodiscard]] double lipschitz_estimate() const;
    /// ||gamma'||^2_{L^2(0,T)} of the piecewise-affine interpolant.
    [[nodiscard]] double derivative_norm_sq() const;

private:
    double horizon_ = 0.0;
    std::vector<double> values_;
};

/// Union of closed elementary squares at one subdivision level; the domain is
/// the interior of that union.
struct SquareUnion {
    int level = 1;
    std::set<SquareIndex> squares;
};

/// omega x window with omega = (x0 - delta0, x0 + delta0).
struct Cylinder {
    double x0 = 0.5;
    double delta0 = 0.1;
};

/// {|x - gamma(t)| < delta0}
struct CurveTube {
    Curve curve;
    double delta0 = 0.1;
};

struct EmptyRegion {};

/// Space-time observation region inside Q_T = (0,1) x (0,T), optionally
/// restricted to a time window (t_lo, t_hi).
class ObservationDomain {
public:
    using Shape = std::variant<SquareUnion, Cylinder, CurveTube, EmptyRegion>;

    ObservationDomain() : ObservationDomain(EmptyRegion{}, 2.0) {}
    ObservationDomain(Shape shape, double horizon);
    ObservationDomain(Shape shape, double horizon, double t_lo, double t_hi);

    static ObservationDomain square_union(int level, std::set<SquareIndex> squares, double horizon);
    static ObservationDomain cylinder(double x0, double delta0, double horizon);
    static ObservationDomain tube(Curve curve, double delta0);
    static ObservationDomain empty(double horizon);

    [[nodiscard]] const Shape& shape() const { return shape_; }
    [[nodiscard]] double horizon() const { return horizon_; }
    [[nodiscard]] double t_lo() const { return t_lo_; }
    [[nodiscard]] double t_hi() const { return t_hi_; }
    [[nodiscard]] bool is_empty() const;

    /// Membership in the open set.
    [[nodiscard]] bool contains(double x, double t) const;

    template <class T>
    [[nodiscard]] const T* as() const { return std::get_if<T>(&shape_); }

private:
    Shape shape_;
    double horizon_;
    double t_lo_;
    double t_hi_;
};

nlohmann::json domain_to_json(const ObservationDomain& d);
ObservationDomain domain_from_json(const nlohmann::json& j);
ObservationDomain load_domain(const std::string& path);

}  // namespace waveobs
