#include "primerace/lattice.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace primerace {
namespace {

std::mutex g_lll_mutex;  // GMP default float precision is process-global

mpz_class round_to_int(const mpf_class& x) {
    mpf_class shifted = x;
    if (x >= 0)
        shifted += 0.5;
    else
        shifted -= 0.5;
    mpf_class fl = floor(shifted);
    mpz_class out;
    mpz_set_f(out.get_mpz_t(), fl.get_mpf_t());
    return out;
}

}  // namespace

void lll_reduce(ZMat& b) {
    std::lock_guard<std::mutex> lock(g_lll_mutex);
    const std::size_t n = b.size();
    if (n <= 1) return;
    const std::size_t dim = b[0].size();
    for (const ZVec& row : b)
        if (row.size() != dim) throw std::invalid_argument("lll_reduce: ragged matrix");

    std::size_t maxbits = 1;
    for (const ZVec& row : b)
        for (const mpz_class& x : row)
            maxbits = std::max(maxbits, mpz_sizeinbase(x.get_mpz_t(), 2));
    const unsigned prec = static_cast<unsigned>(2 * maxbits + 4 * n + 96);
    mpf_set_default_prec(prec);

    std::vector<std::vector<mpf_class>> mu(n, std::vector<mpf_class>(n));
    std::vector<mpf_class> B(n);

    auto exact_dot = [&](std::size_t i, std::size_t j) {
        mpz_class s = 0;
        for (std::size_t t = 0; t < dim; ++t) s += b[i][t] * b[j][t];
        return mpf_class(s);
    };

    // Gram-Schmidt data for row i from exact inner products and rows < i
    auto gs_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < i; ++j) {
            mpf_class u = exact_dot(i, j);
            for (std::size_t k = 0; k < j; ++k) u -= mu[j][k] * mu[i][k] * B[k];
            mu[i][j] = (B[j] != 0) ? mpf_class(u / B[j]) : mpf_class(0);
        }
        mpf_class nrm = exact_dot(i, i);
        for (std::size_t k = 0; k < i; ++k) nrm -= mu[i][k] * mu[i][k] * B[k];
        B[i] = nrm;
    };

    auto size_reduce = [&](std::size_t k, std::size_t j) {
        if (mu[k][j] <= 0.5 && mu[k][j] >= -0.5) return;
        mpz_class q = round_to_int(mu[k][j]);
        if (q == 0) return;
        for (std::size_t t = 0; t < dim; ++t) b[k][t] -= q * b[j][t];
        mpf_class qf(q);
        for (std::size_t t = 0; t < j; ++t) mu[k][t] -= qf * mu[j][t];
        mu[k][j] -= qf;
    };

    gs_row(0);
    std::size_t k = 1;
    const double delta = 0.99;
    while (k < n) {
        gs_row(k);
        size_reduce(k, k - 1);
        mpf_class lhs = B[k];
        mpf_class rhs = (mpf_class(delta) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs >= rhs) {
            for (std::size_t j = k - 1; j-- > 0;) size_reduce(k, j);
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            if (k == 1) gs_row(0);  // row 0 is otherwise never revisited
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

ZMat integer_kernel(const ZMat& m, std::size_t ncols) {
    const std::size_t nrows = m.size();
    // U starts as the identity; the same column operations that eliminate M
    // are mirrored on U, so zeroed columns of M correspond to kernel vectors.
    ZMat a(nrows, ZVec(ncols, 0));
    for (std::size_t i = 0; i < nrows; ++i) {
        if (m[i].size() != ncols) throw std::invalid_argument("integer_kernel: ragged matrix");
        a[i] = m[i];
    }
    ZMat u(ncols, ZVec(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i) u[i][i] = 1;  // u[j] = column j of U

    auto col_sub = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        for (std::size_t i = 0; i < nrows; ++i) a[i][dst] -= q * a[i][src];
        for (std::size_t i = 0; i < ncols; ++i) u[dst][i] -= q * u[src][i];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < nrows; ++i) std::swap(a[i][x], a[i][y]);
        std::swap(u[x], u[y]);
    };

    std::size_t lead = 0;  // columns < lead hold pivots of processed rows
    for (std::size_t row = 0; row < nrows && lead < ncols; ++row) {
        for (;;) {
            std::size_t nz = 0, jmin = lead;
            mpz_class best = 0;
            for (std::size_t j = lead; j < ncols; ++j) {
                if (a[row][j] != 0) {
                    ++nz;
                    if (best == 0 || abs(a[row][j]) < best) {
                        best = abs(a[row][j]);
                        jmin = j;
                    }
                }
            }
            if (nz == 0) break;
            if (nz == 1) {
                col_swap(lead, jmin);
                ++lead;
                break;
            }
            for (std::size_t j = lead; j < ncols; ++j) {
                if (j == jmin || a[row][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[row][j].get_mpz_t(), a[row][jmin].get_mpz_t());
                if (q != 0) col_sub(j, jmin, q);
                else {
                    // remainder step: one subtraction with quotient sign 1
                }
            }
        }
    }
    ZMat kernel;
    for (std::size_t j = lead; j < ncols; ++j) kernel.push_back(u[j]);
    return kernel;
}

ZMat saturate_rows(const ZMat& m, std::size_t ncols) {
    ZMat k1 = integer_kernel(m, ncols);
    return integer_kernel(k1, ncols);
}

std::size_t integer_rank(ZMat m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpz_class g = gcd(m[r][c], m[i][c]);
            mpz_class fr = m[i][c] / g, fi = m[r][c] / g;
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * fi - m[r][j] * fr;
        }
        ++r;
    }
    return r;
}

mpz_class determinant_abs(ZMat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const ZVec& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant_abs: not square");
    mpz_class prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    mpz_class d = m[n - 1][n - 1];
    (void)negate;
    return abs(d);
}

std::vector<std::size_t> independent_subset(const ZMat& rows) {
    std::vector<std::size_t> picked;
    ZMat acc;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        acc.push_back(rows[i]);
        if (integer_rank(acc) == acc.size()) {
            picked.push_back(i);
        } else {
            acc.pop_back();
        }
    }
    return picked;
}

}  // namespace primerace
