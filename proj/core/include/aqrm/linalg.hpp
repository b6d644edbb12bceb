// linalg.hpp — Dense symmetric eigensolver and small matrix helpers.
//
// The truncated AQRM Hamiltonians are small (a few hundred rows), dense
// and real symmetric, so the solver is the classic two-stage reduction:
// Householder tridiagonalization followed by implicit-shift QL with
// accumulated rotations. No external linear-algebra dependency.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace aqrm::linalg {

// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t dim() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const std::vector<double>& data() const { return a_; }

    // max_ij |a_ij - a_ji|
    double symmetry_defect() const;
    // max_ij |a_ij|
    double max_abs() const;

private:
    std::size_t n_{0};
    std::vector<double> a_;
};

// Eigenvalues (ascending) and the matching orthonormal eigenvectors,
// stored as columns of `vectors`.
struct Eigensystem {
    std::vector<double> values;
    Matrix vectors;

    std::vector<double> eigenvector(std::size_t k) const;
};

// Full spectral decomposition of a symmetric matrix. Throws
// std::invalid_argument if the symmetry defect exceeds 1e-12 * max|a_ij|,
// ConvergenceError if a QL eigenvalue needs more than `max_iter` implicit
// shifts.
Eigensystem eigh(const Matrix& a, int max_iter = 50);

// 2x2 real symmetric matrix [[m00, m01], [m01, m11]].
struct SymMat2 {
    double m00{0.0};
    double m01{0.0};
    double m11{0.0};

    // eigenvalues, ascending
    std::pair<double, double> eigenvalues() const;
};

}  // namespace aqrm::linalg
