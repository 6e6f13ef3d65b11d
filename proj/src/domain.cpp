#include "waveobs/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace waveobs {

Curve::Curve(double horizon, std::vector<double> values)
    : horizon_(horizon), values_(std::move(values)) {
    if (!(horizon_ > 0.0)) {
        throw std::invalid_argument("Curve: horizon must be > 0");
    }
    if (values_.size() < 2) {
        throw std::invalid_argument("Curve: need at least two nodes");
    }
}

Curve Curve::constant(double horizon, std::size_t intervals, double value) {
    return {horizon, std::vector<double>(intervals + 1, value)};
}

double Curve::operator()(double t) const {
    const double s = std::clamp(t, 0.0, horizon_) / dt();
    auto k = static_cast<std::size_t>(s);
    if (k >= intervals()) {
        return values_.back();
    }
    const double w = s - static_cast<double>(k);
    return (1.0 - w) * values_[k] + w * values_[k + 1];
}

std::pair<double, double> Curve::range(double t0, double t1) const {
    double lo = std::min((*this)(t0), (*this)(t1));
    double hi = std::max((*this)(t0), (*this)(t1));
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double tk = time(k);
        if (tk > t0 && tk < t1) {
            lo = std::min(lo, values_[k]);
            hi = std::max(hi, values_[k]);
        }
    }
    return {lo, hi};
}

double Curve::lipschitz_estimate() const {
    double m = 0.0;
    for (std::size_t k = 1; k < values_.size(); ++k) {
        m = std::max(m, std::abs(values_[k] - values_[k - 1]));
    }
    return m / dt();
}

double Curve::derivative_norm_sq() const {
    double s = 0.0;
    for (std::size_t k = 1; k < values_.size(); ++k) {
        const double d = values_[k] - values_[k - 1];
        s += d * d;
    }
    return s / dt();
}

ObservationDomain::ObservationDomain(Shape shape, double horizon)
    : ObservationDomain(std::move(shape), horizon, 0.0, horizon) {}

ObservationDomain::ObservationDomain(Shape shape, double horizon, double t_lo, double t_hi)
    : shape_(std::move(shape)), horizon_(horizon), t_lo_(t_lo), t_hi_(t_hi) {
    if (!(horizon_ > 0.0)) {
        throw std::invalid_argument("ObservationDomain: horizon must be > 0");
    }
    if (const auto* c = std::get_if<Cylinder>(&shape_)) {
        if (!(c->delta0 > 0.0)) {
            throw std::invalid_argument("ObservationDomain: delta0 must be > 0");
        }
    }
    if (const auto* tb = std::get_if<CurveTube>(&shape_)) {
        if (!(tb->delta0 > 0.0)) {
            throw std::invalid_argument("ObservationDomain: delta0 must be > 0");
        }
    }
    if (const auto* u = std::get_if<SquareUnion>(&shape_)) {
        for (const SquareIndex& s : u->squares) {
            if (s.n != u->level) {
                throw std::invalid_argument("ObservationDomain: mixed square levels");
            }
        }
    }
}

ObservationDomain ObservationDomain::square_union(int level, std::set<SquareIndex> squares,
                                                  double horizon) {
    return {SquareUnion{level, std::move(squares)}, horizon};
}

ObservationDomain ObservationDomain::cylinder(double x0, double delta0, double horizon) {
    return {Cylinder{x0, delta0}, horizon};
}

ObservationDomain ObservationDomain::tube(Curve curve, double delta0) {
    const double T = curve.horizon();
    return {CurveTube{std::move(curve), delta0}, T};
}

ObservationDomain ObservationDomain::empty(double horizon) { return {EmptyRegion{}, horizon}; }

bool ObservationDomain::is_empty() const {
    if (std::holds_alternative<EmptyRegion>(shape_)) {
        return true;
    }
    if (const auto* u = std::get_if<SquareUnion>(&shape_)) {
        return u->squares.empty();
    }
    return t_hi_ <= t_lo_;
}

bool ObservationDomain::contains(double x, double t) const {
    if (!(x > 0.0 && x < 1.0 && t > std::max(0.0, t_lo_) && t < std::min(horizon_, t_hi_))) {
        return false;
    }
    return std::visit(
        [&](const auto& s) -> bool {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, EmptyRegion>) {
                return false;
            } else if constexpr (std::is_same_v<S, Cylinder>) {
                return std::abs(x - s.x0) < s.delta0;
            } else if constexpr (std::is_same_v<S, CurveTube>) {
                return std::abs(x - s.curve(t)) < s.delta0;
            } else {
                // Interior of the union: every closed cell containing the point is a member.
                const double xi = (x + t) * s.level;
                const double zeta = (x - t) * s.level;
                auto cells = [](double v) {
                    const double r = std::round(v);
                    std::vector<std::int64_t> c;
                    if (std::abs(v - r) < 1e-12) {
                        c = {static_cast<std::int64_t>(r) - 1, static_cast<std::int64_t>(r)};
                    } else {
                        c = {static_cast<std::int64_t>(std::floor(v))};
                    }
                    return c;
                };
                for (std::int64_t a : cells(xi)) {
                    for (std::int64_t b : cells(zeta)) {
                        if (!s.squares.contains(
                                SquareIndex(index_of_cell(a), index_of_cell(b), s.level))) {
                            return false;
                        }
                    }
                }
                return true;
            }
        },
        shape_);
}

nlohmann::json domain_to_json(const ObservationDomain& d) {
    nlohmann::json j;
    j["T"] = d.horizon();
    if (d.t_lo() != 0.0 || d.t_hi() != d.horizon()) {
        j["window"] = {d.t_lo(), d.t_hi()};
    }
    if (const auto* u = d.as<SquareUnion>()) {
        j["type"] = "square_union";
        j["level"] = u->level;
        nlohmann::json sq = nlohmann::json::array();
        for (const SquareIndex& s : u->squares) {
            sq.push_back({s.i, s.j});
        }
        j["squares"] = sq;
    } else if (const auto* c = d.as<Cylinder>()) {
        j["type"] = "cylinder";
        j["x0"] = c->x0;
        j["delta0"] = c->delta0;
    } else if (const auto* tb = d.as<CurveTube>()) {
        j["type"] = "curve_tube";
        j["delta0"] = tb->delta0;
        std::vector<double> times;
        for (std::size_t k = 0; k <= tb->curve.intervals(); ++k) {
            times.push_back(tb->curve.time(k));
        }
        const auto v = tb->curve.values();
        j["curve"] = {{"times", times}, {"values", std::vector<double>(v.begin(), v.end())}};
    } else {
        j["type"] = "empty";
    }
    return j;
}

ObservationDomain domain_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    const double T = j.at("T").get<double>();
    double t_lo = 0.0;
    double t_hi = T;
    if (j.contains("window")) {
        t_lo = j.at("window").at(0).get<double>();
        t_hi = j.at("window").at(1).get<double>();
    }
    if (type == "square_union") {
        SquareUnion u;
        u.level = j.at("level").get<int>();
        for (const auto& s : j.at("squares")) {
            u.squares.emplace(s.at(0).get<std::int64_t>(), s.at(1).get<std::int64_t>(), u.level);
        }
        return {std::move(u), T, t_lo, t_hi};
    }
    if (type == "cylinder") {
        return {Cylinder{j.at("x0").get<double>(), j.at("delta0").get<double>()}, T, t_lo, t_hi};
    }
    if (type == "curve_tube") {
        const auto& c = j.at("curve");
        auto values = c.at("values").get<std::vector<double>>();
        if (c.contains("times")) {
            const auto times = c.at("times").get<std::vector<double>>();
            if (times.size() != values.size() || times.size() < 2) {
                throw std::invalid_argument("curve: times and values must have equal length >= 2");
            }
            const double dt = T / static_cast<double>(times.size() - 1);
            for (std::size_t k = 0; k < times.size(); ++k) {
                if (std::abs(times[k] - dt * static_cast<double>(k)) > 1e-9 * std::max(1.0, T)) {
                    throw std::invalid_argument("curve: times must be uniform on [0, T]");
                }
            }
        }
        return {CurveTube{Curve(T, std::move(values)), j.at("delta0").get<double>()}, T, t_lo,
                t_hi};
    }
    if (type == "empty") {
        return {EmptyRegion{}, T, t_lo, t_hi};
    }
    throw std::invalid_argument("unknown domain type: " + type);
}

ObservationDomain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open domain file: " + path);
    }
    return domain_from_json(nlohmann::json::parse(in));
}

}  // namespace waveobs
