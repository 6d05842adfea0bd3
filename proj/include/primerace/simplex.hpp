#pragma once

#include <gmpxx.h>

#include <vector>

namespace primerace {

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    mpq_class objective;
    std::vector<mpq_class> x;
};

// maximize c.x subject to A x <= b, x >= 0, in exact rational arithmetic.
// Two-phase dense tableau with Bland's rule, so the strict-feasibility
// decisions built on top of it never depend on a float tolerance.
LPResult solve_lp(const std::vector<std::vector<mpq_class>>& A,
                  const std::vector<mpq_class>& b, const std::vector<mpq_class>& c);

}  // namespace primerace
