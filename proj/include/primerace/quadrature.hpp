#pragma once

#include <cstddef>
#include <functional>

namespace primerace {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    std::size_t evals = 0;
    bool converged = true;
};

// Adaptive panel quadrature on [a,b]: nested 7/15-point Gauss rules with
// bisection until |G15-G7| meets the tolerance.  abs_tol and rel_tol are
// combined as abs_tol + rel_tol*|I|.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-12,
                     int max_depth = 48);

// Same, but the initial interval is pre-split into nseg equal panels before
// adapting; use when the integrand oscillates on a known scale.
QuadResult integrate_segmented(const std::function<double(double)>& f, double a, double b,
                               std::size_t nseg, double abs_tol = 1e-12,
                               double rel_tol = 1e-12, int max_depth = 48);

// Logarithmic integral li(x) = integral_2^x dt/log t, x >= 2; li(2) = 0.
// Relative accuracy 1e-12.
double log_integral(double x);

}  // namespace primerace
