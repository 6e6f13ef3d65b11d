#include <omp.h>

#include "waveobs/kernels.hpp"

namespace waveobs {

void set_thread_count(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

DenseMatrix assemble_gram_omp(const SpaceTimeWeight& w, int level, int quad_order) {
    const auto n = 2 * static_cast<std::size_t>(level);
    const std::vector<LatticeCell> cells = active_cells(w, level);
    std::vector<CellElement> elements(cells.size());
    const auto count = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < count; ++k) {
        elements[k] = cell_element(w, cells[k], level, quad_order);
    }
    DenseMatrix g(n, n);
    for (const CellElement& e : elements) {
        if (e.empty) {
            continue;
        }
        for (int r = 0; r < 4; ++r) {
            for (int s = 0; s < 4; ++s) {
                g(e.hat[r], e.hat[s]) += e.m[r * 4 + s];
            }
        }
    }
    return g;
}

std::vector<double> source_integrals_omp(const SpaceTimeWeight& w, const PiecewiseInitialData& phi,
                                         const std::vector<Polygon>& polys, int quad_order) {
    std::vector<double> out(polys.size(), 0.0);
    const auto count = static_cast<std::int64_t>(polys.size());
#pragma omp parallel
    {
        std::vector<QuadPoint> pts;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t k = 0; k < count; ++k) {
            pts.clear();
            w.integrate_polygon(polys[k], quad_order, pts);
            double s = 0.0;
            for (const QuadPoint& q : pts) {
                s += q.w * eval_phi(phi, q.x, q.t);
            }
            out[k] = s;
        }
    }
    return out;
}

}  // namespace waveobs
