#include "waveobs/kernels.hpp"

namespace waveobs {

namespace {

void accumulate(DenseMatrix& g, const CellElement& e) {
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 4; ++s) {
            g(e.hat[r], e.hat[s]) += e.m[r * 4 + s];
        }
    }
}

double phi_integral(const SpaceTimeWeight& w, const PiecewiseInitialData& phi, const Polygon& p,
                    int quad_order, std::vector<QuadPoint>& pts) {
    pts.clear();
    w.integrate_polygon(p, quad_order, pts);
    double s = 0.0;
    for (const QuadPoint& q : pts) {
        s += q.w * eval_phi(phi, q.x, q.t);
    }
    return s;
}

}  // namespace

DenseMatrix assemble_gram_serial(const SpaceTimeWeight& w, int level, int quad_order) {
    const auto n = 2 * static_cast<std::size_t>(level);
    DenseMatrix g(n, n);
    for (const LatticeCell& c : active_cells(w, level)) {
        const CellElement e = cell_element(w, c, level, quad_order);
        if (!e.empty) {
            accumulate(g, e);
        }
    }
    return g;
}

std::vector<double> source_integrals_serial(const SpaceTimeWeight& w,
                                            const PiecewiseInitialData& phi,
                                            const std::vector<Polygon>& polys, int quad_order) {
    std::vector<double> out(polys.size(), 0.0);
    std::vector<QuadPoint> pts;
    for (std::size_t k = 0; k < polys.size(); ++k) {
        out[k] = phi_integral(w, phi, polys[k], quad_order, pts);
    }
    return out;
}

}  // namespace waveobs
