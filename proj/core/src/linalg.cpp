#include "aqrm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "aqrm/errors.hpp"

namespace aqrm::linalg {

double Matrix::symmetry_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
}

double Matrix::max_abs() const {
    double worst = 0.0;
    for (double v : a_) worst = std::max(worst, std::abs(v));
    return worst;
}

std::vector<double> Eigensystem::eigenvector(std::size_t k) const {
    std::vector<double> v(vectors.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
}

namespace {

// Householder reduction to tridiagonal form; on exit z holds the
// accumulated orthogonal transform, d the diagonal, e the subdiagonal
// (e[0] unused).
void tridiagonalize(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(z.dim());
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i > 0; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    double s = 0.0;
                    for (int k = 0; k <= j; ++k) s += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) s += z(k, j) * z(i, k);
                    e[j] = s / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    const double gj = e[j] - hh * f;
                    e[j] = gj;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + gj * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i - 1;
        if (d[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k <= l; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) {
            z(j, i) = 0.0;
            z(i, j) = 0.0;
        }
    }
}

// Implicit-shift QL on the tridiagonal (d, e); plane rotations are
// applied to the columns of z so that on exit column k of z is the
// eigenvector for d[k].
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& z, int max_iter) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = 0;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter) {
                    throw ConvergenceError("symmetric QL did not converge after " +
                                           std::to_string(max_iter) + " shifts per eigenvalue");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

Eigensystem eigh(const Matrix& a, int max_iter) {
    const std::size_t n = a.dim();
    if (n == 0) throw std::invalid_argument("eigh: empty matrix");
    if (a.symmetry_defect() > 1e-12 * std::max(1.0, a.max_abs())) {
        throw std::invalid_argument("eigh: matrix is not symmetric");
    }

    Eigensystem sys;
    sys.vectors = a;
    std::vector<double> d;
    std::vector<double> e;
    tridiagonalize(sys.vectors, d, e);
    ql_implicit(d, e, sys.vectors, max_iter);

    // sort ascending, permuting eigenvector columns to match
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&d](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    sys.values.resize(n);
    Matrix sorted(n);
    for (std::size_t k = 0; k < n; ++k) {
        sys.values[k] = d[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted(i, k) = sys.vectors(i, order[k]);
    }
    sys.vectors = std::move(sorted);
    return sys;
}

std::pair<double, double> SymMat2::eigenvalues() const {
    const double mean = 0.5 * (m00 + m11);
    const double rad = std::hypot(0.5 * (m00 - m11), m01);
    return {mean - rad, mean + rad};
}

}  // namespace aqrm::linalg
