#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "waveobs/rational.hpp"

namespace waveobs {

class ObservationDomain;

/// Uniform subdivision x_i = i/n of [0,1], extended to all i in Z.
class Subdivision {
public:
    explicit Subdivision(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] Rational kappa() const { return {1, n_}; }
    [[nodiscard]] Rational node(std::int64_t i) const { return {i, n_}; }

private:
    int n_;
};

/// Elementary square C_(i,j): x + t in I_i and x - t in I_j, with
/// I_i = [x_{i-1}, x_i] for i > 0 and [x_i, x_{i+1}] for i < 0.
struct SquareIndex {
    std::int64_t i = 1;
    std::int64_t j = 1;
    int n = 1;

    SquareIndex() = default;
    SquareIndex(std::int64_t i_, std::int64_t j_, int n_);

    friend auto operator<=>(const SquareIndex&, const SquareIndex&) = default;
};

struct GridPoint {
    Rational x;
    Rational t;
};

/// Maps a nonzero extended interval index onto I_n = {-n..-1, 1..n}.
/// Throws std::invalid_argument for i == 0.
[[nodiscard]] int fold_index(std::int64_t i, int n);

/// Position of a folded index in the matrix order (-n..-1, 1..n).
[[nodiscard]] inline int vertex_position(int folded, int n) {
    return folded < 0 ? folded + n : folded + n - 1;
}
[[nodiscard]] inline int vertex_at(int position, int n) {
    return position < n ? position - n : position - n + 1;
}

/// Integer cell coordinate a with I_i = [a/n, (a+1)/n].
[[nodiscard]] inline std::int64_t cell_of_index(std::int64_t i) { return i > 0 ? i - 1 : i; }
[[nodiscard]] inline std::int64_t index_of_cell(std::int64_t a) { return a >= 0 ? a + 1 : a; }

/// Lower and upper endpoint of I_i at level n.
[[nodiscard]] Rational interval_lo(std::int64_t i, int n);
[[nodiscard]] Rational interval_hi(std::int64_t i, int n);

[[nodiscard]] GridPoint square_center(const SquareIndex& idx);
/// Corners in the order bottom, right, top, left.
[[nodiscard]] std::array<GridPoint, 4> square_corners(const SquareIndex& idx);
[[nodiscard]] Rational square_area(int n);

/// The p^2 squares of level p*n whose union is idx.
[[nodiscard]] std::vector<SquareIndex> subsquare_indices(const SquareIndex& idx, int p);
/// The level-n square that contains a square of level r*n.
[[nodiscard]] SquareIndex parent_square(const SquareIndex& idx, int n);

/// All squares of level n whose interior lies in (0,1) x (0,horizon).
[[nodiscard]] std::vector<SquareIndex> squares_in_horizon(int n, double horizon);

/// C_n(q): squares of level n whose interior lies in the domain.
[[nodiscard]] std::vector<SquareIndex> squares_in_domain(const ObservationDomain& domain, int n);

/// Inner approximation of {X in q : d(X, dq) > eps}.
[[nodiscard]] ObservationDomain epsilon_interior(const ObservationDomain& domain, double eps);

/// Minimum distance between the two offset polylines gamma + offset_a and gamma + offset_b.
[[nodiscard]] double polyline_offset_distance(const ObservationDomain& tube, double offset_a,
                                              double offset_b);

/// Sampled geometric optics check: every characteristic from `starts`
/// equidistant points of [0,1] x {0}, reflected at x = 0 and x = 1, must hit
/// the domain before the horizon. step <= 0 selects horizon/4096.
[[nodiscard]] bool goc_check(const ObservationDomain& domain, int starts = 1024,
                             double step = 0.0);

/// Position at time t of the characteristic leaving x0 with speed `direction` (+1/-1).
[[nodiscard]] double characteristic_position(double x0, int direction, double t);

}  // namespace waveobs
