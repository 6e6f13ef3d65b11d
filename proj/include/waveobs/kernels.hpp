#pragma once

#include <vector>

#include "waveobs/dalembert.hpp"
#include "waveobs/dense.hpp"
#include "waveobs/space_time.hpp"

namespace waveobs {

/// Gram matrix over all 2L periodic hats (hat 0 included). The serial and
/// OpenMP variants produce bitwise identical matrices: elements are computed
/// independently and accumulated in the fixed cell order.
[[nodiscard]] DenseMatrix assemble_gram_serial(const SpaceTimeWeight& w, int level, int quad_order);
[[nodiscard]] DenseMatrix assemble_gram_omp(const SpaceTimeWeight& w, int level, int quad_order);

/// Integral of phi * weight over each polygon.
[[nodiscard]] std::vector<double> source_integrals_serial(const SpaceTimeWeight& w,
                                                          const PiecewiseInitialData& phi,
                                                          const std::vector<Polygon>& polys,
                                                          int quad_order);
[[nodiscard]] std::vector<double> source_integrals_omp(const SpaceTimeWeight& w,
                                                       const PiecewiseInitialData& phi,
                                                       const std::vector<Polygon>& polys,
                                                       int quad_order);

/// Sets the OpenMP thread count; values <= 0 leave the runtime default.
void set_thread_count(int threads);

}  // namespace waveobs
