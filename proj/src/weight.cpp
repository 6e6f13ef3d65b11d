#include "waveobs/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace waveobs {

WeightProfile::WeightProfile(double delta0, double delta) : delta0_(delta0), delta_(delta) {
    if (!(delta0 > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("WeightProfile: widths must be positive");
    }
    if (delta >= delta0) {
        throw std::invalid_argument("WeightProfile: delta must be smaller than delta0");
    }
}

double WeightProfile::value(double s) const {
    const double a = std::abs(s);
    if (a <= plateau()) {
        return 1.0;
    }
    if (a >= delta0_) {
        return 0.0;
    }
    const double u = (a - plateau()) / delta_;
    return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

double WeightProfile::derivative(double s) const {
    const double a = std::abs(s);
    if (a <= plateau() || a >= delta0_) {
        return 0.0;
    }
    const double u = (a - plateau()) / delta_;
    const double d = -30.0 * u * u * (1.0 - u) * (1.0 - u) / delta_;
    return s < 0.0 ? -d : d;
}

double WeightProfile::second_derivative(double s) const {
    const double a = std::abs(s);
    if (a <= plateau() || a >= delta0_) {
        return 0.0;
    }
    const double u = (a - plateau()) / delta_;
    return -60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / (delta_ * delta_);
}

}  // namespace waveobs
