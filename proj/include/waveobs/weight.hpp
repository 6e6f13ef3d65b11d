#pragma once

namespace waveobs {

/// Even C^2 cutoff: 1 on |s| <= delta0 - delta, 0 on |s| >= delta0, quintic
/// smoothstep in between.
class WeightProfile {
public:
    WeightProfile() : WeightProfile(0.15, 0.15 / 4.0) {}
    WeightProfile(double delta0, double delta);

    [[nodiscard]] double delta0() const { return delta0_; }
    [[nodiscard]] double delta() const { return delta_; }
    /// Start of the transition band, delta0 - delta.
    [[nodiscard]] double plateau() const { return delta0_ - delta_; }

    [[nodiscard]] double value(double s) const;
    [[nodiscard]] double derivative(double s) const;
    [[nodiscard]] double second_derivative(double s) const;

    /// Polynomial coefficients c0..c5 of chi on the right band in the local
    /// variable u = (s - plateau) / delta.
    static constexpr double kCoeff[6] = {1.0, 0.0, 0.0, -10.0, 15.0, -6.0};

private:
    double delta0_;
    double delta_;
};

[[nodiscard]] inline double chi_eval(const WeightProfile& w, double s) { return w.value(s); }
[[nodiscard]] inline double chi_prime(const WeightProfile& w, double s) { return w.derivative(s); }

}  // namespace waveobs
