#include "waveobs/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace waveobs {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = dot(row(r), v);
    }
    return out;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& b) const {
    if (b.rows_ != cols_) {
        throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
    }
    DenseMatrix out(rows_, b.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(r, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; ++c) {
                out(r, c) += a * b(k, c);
            }
        }
    }
    return out;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

double DenseMatrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r + 1; c < cols_; ++c) {
            m = std::max(m, std::abs((*this)(r, c) - (*this)(c, r)));
        }
    }
    return m;
}

EigenDecomposition jacobi_eigen(const DenseMatrix& input, bool want_vectors, double tol,
                                int max_sweeps) {
    const std::size_t n = input.rows();
    if (input.cols() != n) {
        throw std::invalid_argument("jacobi_eigen: matrix must be square");
    }
    DenseMatrix a = input;
    DenseMatrix v = want_vectors ? DenseMatrix::identity(n) : DenseMatrix();
    double frob = 0.0;
    for (double x : a.data()) {
        frob += x * x;
    }
    frob = std::sqrt(frob);
    const double threshold = tol * std::max(frob, 1.0);
    EigenDecomposition out;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += 2.0 * a(p, q) * a(p, q);
            }
        }
        if (std::sqrt(off) < threshold) {
            break;
        }
        ++out.sweeps;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v(k, p);
                        const double vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
    }
    if (want_vectors) {
        out.vectors = DenseMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t r = 0; r < n; ++r) {
                out.vectors(r, k) = v(r, order[k]);
            }
        }
    }
    return out;
}

DenseMatrix cholesky(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > 0.0)) {
            throw std::domain_error("cholesky: matrix is not positive definite");
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const DenseMatrix& l, std::span<const double> b) {
    const std::size_t n = l.rows();
    std::vector<double> y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            y[i] -= l(i, k) * y[k];
        }
        y[i] /= l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) {
            y[i] -= l(k, i) * y[k];
        }
        y[i] /= l(i, i);
    }
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                 std::span<const double> super, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (rhs.size() != n || sub.size() + 1 < n || super.size() + 1 < n) {
        throw std::invalid_argument("thomas_solve: size mismatch");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    double denom = diag[0];
    if (denom == 0.0) {
        throw std::domain_error("thomas_solve: singular system");
    }
    c[0] = n > 1 ? super[0] / denom : 0.0;
    d[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - sub[i - 1] * c[i - 1];
        if (denom == 0.0) {
            throw std::domain_error("thomas_solve: singular system");
        }
        c[i] = i + 1 < n ? super[i] / denom : 0.0;
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / denom;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

}  // namespace waveobs
