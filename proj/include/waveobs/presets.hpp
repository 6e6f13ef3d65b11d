#pragma once

#include <string>
#include <vector>

#include "waveobs/dalembert.hpp"

namespace waveobs {

/// Target initial state (y0, y1) of the controlled equation with y0(0) = y0(1) = 0.
struct InitialState {
    std::string name;
    RealFunction y0;
    RealFunction dy0;
    RealFunction y1;
    /// Interior points of (0,1) where y0, dy0 or y1 are not smooth.
    std::vector<double> breakpoints;
};

/// "EX1".."EX4".
[[nodiscard]] InitialState preset_state(const std::string& name);

/// Piecewise-linear interpolation of node values on a uniform grid of [0,1].
[[nodiscard]] InitialState tabulated_state(std::vector<double> y0_nodes,
                                           std::vector<double> y1_nodes);

[[nodiscard]] InitialState zero_state();

/// ||y0'||^2 + ||y1||^2 by piecewise Gauss quadrature.
[[nodiscard]] double state_v_norm_sq(const InitialState& s);

}  // namespace waveobs
