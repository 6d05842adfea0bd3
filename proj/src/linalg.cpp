#include "primerace/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace primerace {

std::size_t rank(Mat m, double pivot_tol) {
    double scale = 0.0;
    for (double v : m.a) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return 0;
    double tol = pivot_tol * scale;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < m.rows; ++i)
            if (std::fabs(m(i, c)) > std::fabs(m(piv, c))) piv = i;
        if (std::fabs(m(piv, c)) <= tol) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            double f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

Mat rref(const Mat& m, Mat* transform, std::vector<std::size_t>* pivot_cols,
         double pivot_tol) {
    Mat e = m;
    Mat u(m.rows, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) u(i, i) = 1.0;
    double scale = 0.0;
    for (double v : e.a) scale = std::max(scale, std::fabs(v));
    double tol = pivot_tol * (scale == 0.0 ? 1.0 : scale);
    if (pivot_cols) pivot_cols->clear();

    std::size_t r = 0;
    for (std::size_t c = 0; c < e.cols && r < e.rows; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < e.rows; ++i)
            if (std::fabs(e(i, c)) > std::fabs(e(piv, c))) piv = i;
        if (std::fabs(e(piv, c)) <= tol) continue;
        for (std::size_t j = 0; j < e.cols; ++j) std::swap(e(piv, j), e(r, j));
        for (std::size_t j = 0; j < u.cols; ++j) std::swap(u(piv, j), u(r, j));
        double d = e(r, c);
        for (std::size_t j = 0; j < e.cols; ++j) e(r, j) /= d;
        for (std::size_t j = 0; j < u.cols; ++j) u(r, j) /= d;
        for (std::size_t i = 0; i < e.rows; ++i) {
            if (i == r) continue;
            double f = e(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < e.cols; ++j) e(i, j) -= f * e(r, j);
            for (std::size_t j = 0; j < u.cols; ++j) u(i, j) -= f * u(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    if (transform) *transform = u;
    return e;
}

std::vector<double> symmetric_eigenvalues(Mat m, int sweeps) {
    std::size_t n = m.rows;
    for (int s = 0; s < sweeps; ++s) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(m(p, q)) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - sn * mkq;
                    m(k, q) = sn * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - sn * mqk;
                    m(q, k) = sn * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

Mat orthonormal_rows(const Mat& m, double tol) {
    std::vector<std::vector<double>> basis;
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::vector<double> v(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) v[j] = m(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                double dot = 0.0;
                for (std::size_t j = 0; j < m.cols; ++j) dot += v[j] * u[j];
                for (std::size_t j = 0; j < m.cols; ++j) v[j] -= dot * u[j];
            }
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > tol) {
            for (double& x : v) x /= norm;
            basis.push_back(std::move(v));
        }
    }
    Mat out(basis.size(), m.cols);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = basis[i][j];
    return out;
}

}  // namespace primerace
