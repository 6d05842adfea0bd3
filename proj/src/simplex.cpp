#include "primerace/simplex.hpp"

#include <stdexcept>

namespace primerace {
namespace {

using Row = std::vector<mpq_class>;

// Bland's rule pivots on a tableau whose last column is the rhs and whose
// last row is the objective (stored negated, as reduced costs).
// Returns false when unbounded.
bool pivot_to_optimal(std::vector<Row>& T, std::vector<std::size_t>& basis,
                      std::size_t ncols) {
    const std::size_t m = T.size() - 1;
    for (;;) {
        // entering: smallest index with negative reduced cost
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (T[m][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == ncols) return true;
        // leaving: min ratio, ties by smallest basis index
        std::size_t leave = m;
        mpq_class best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            mpq_class ratio = T[i][ncols] / T[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return false;  // unbounded
        // pivot
        mpq_class piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            mpq_class f = T[i][enter];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
}

}  // namespace

LPResult solve_lp(const std::vector<std::vector<mpq_class>>& A, const std::vector<mpq_class>& b,
                  const std::vector<mpq_class>& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("solve_lp: ragged constraint matrix");
    if (b.size() != m) throw std::invalid_argument("solve_lp: rhs size mismatch");

    // columns: n structural, m slacks, then artificials for rows with b < 0
    std::size_t nart = 0;
    for (const auto& v : b)
        if (v < 0) ++nart;
    const std::size_t ncols = n + m + nart;
    std::vector<Row> T(m + 1, Row(ncols + 1, 0));
    std::vector<std::size_t> basis(m);
    std::size_t art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        mpq_class sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) T[i][j] = sign * A[i][j];
        T[i][n + i] = sign;  // slack
        T[i][ncols] = sign * b[i];
        if (b[i] < 0) {
            T[i][art] = 1;
            basis[i] = art++;
        } else {
            basis[i] = n + i;
        }
    }

    if (nart > 0) {
        // phase 1: minimize sum of artificials
        for (std::size_t j = n + m; j < ncols; ++j) T[m][j] = 1;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n + m)
                for (std::size_t j = 0; j <= ncols; ++j) T[m][j] -= T[i][j];
        if (!pivot_to_optimal(T, basis, ncols))
            throw std::logic_error("solve_lp: phase 1 unbounded");
        if (T[m][ncols] != 0) {
            LPResult r;
            r.status = LPStatus::infeasible;
            return r;
        }
        // drive leftover artificials out of the basis where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n + m) continue;
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < n + m; ++j)
                if (T[i][j] != 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) continue;  // redundant row
            mpq_class piv = T[i][enter];
            for (auto& v : T[i]) v /= piv;
            for (std::size_t k = 0; k <= m; ++k) {
                if (k == i) continue;
                mpq_class f = T[k][enter];
                if (f == 0) continue;
                for (std::size_t j = 0; j <= ncols; ++j) T[k][j] -= f * T[i][j];
            }
            basis[i] = enter;
        }
        // clear artificial columns and rebuild objective
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = n + m; j < ncols; ++j) T[i][j] = 0;
    }

    // phase 2 objective: reduced costs of -c through the current basis
    for (std::size_t j = 0; j <= ncols; ++j) T[m][j] = 0;
    for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) continue;
        mpq_class f = T[m][basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= ncols; ++j) T[m][j] -= f * T[i][j];
    }
    if (!pivot_to_optimal(T, basis, ncols)) {
        LPResult r;
        r.status = LPStatus::unbounded;
        return r;
    }
    LPResult r;
    r.status = LPStatus::optimal;
    r.objective = T[m][ncols];
    r.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) r.x[basis[i]] = T[i][ncols];
    return r;
}

}  // namespace primerace
