#pragma once

#include <cstddef>
#include <vector>

namespace primerace {

// Dense row-major matrix, sized for the small systems that show up here
// (r <= a few dozen).
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Rank by Gaussian elimination with full pivoting; entries below pivot_tol
// (relative to the largest entry) count as zero.
std::size_t rank(Mat m, double pivot_tol = 1e-10);

// Reduced row echelon form.  Returns the RREF of m; if transform is non-null
// it receives the square matrix U with U*m = rref(m).  pivot_cols receives
// the pivot column of each pivot row.
Mat rref(const Mat& m, Mat* transform, std::vector<std::size_t>* pivot_cols,
         double pivot_tol = 1e-10);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(Mat m, int sweeps = 64);

// Orthonormal basis (rows) spanning the row space of m, via modified
// Gram-Schmidt; rows with residual norm below tol are dropped.
Mat orthonormal_rows(const Mat& m, double tol = 1e-12);

}  // namespace primerace
