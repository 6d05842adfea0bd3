#include "primerace/bessel.hpp"

#include <cmath>

namespace primerace {
namespace {

// Power series sum_k (-1)^k (x/2)^{2k} / (k!)^2, summed in extended
// precision; cancellation near x=16 costs ~5 digits, which the 64-bit
// long double mantissa absorbs.
double j0_series(double x) {
    long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(static_cast<double>(term)) < 1e-22 * (1.0 + std::fabs(static_cast<double>(sum))))
            break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion
//   J0(x) ~ sqrt(2/(pi x)) [ P(x) cos(x - pi/4) - Q(x) sin(x - pi/4) ]
// with a_k = ((2k-1)!!)^2 / (k! 8^k), P = sum (-1)^j a_{2j} x^{-2j},
// Q = sum (-1)^j a_{2j+1} x^{-2j-1}.  Truncation error at x >= 16 is below
// the first omitted term, ~3e-14.
double j0_asymptotic(double x) {
    long double a[22];
    a[0] = 1.0L;
    for (int k = 1; k < 22; ++k) {
        long double odd = 2.0L * k - 1.0L;
        a[k] = a[k - 1] * odd * odd / (8.0L * k);
    }
    long double inv = 1.0L / x;
    long double P = 0.0L, Q = 0.0L, p = 1.0L;
    for (int j = 0; 2 * j + 1 < 22; ++j) {
        long double sgn = (j % 2 == 0) ? 1.0L : -1.0L;
        P += sgn * a[2 * j] * p;
        Q += sgn * a[2 * j + 1] * p * inv;
        p *= inv * inv;
    }
    long double omega = static_cast<long double>(x) - 0.785398163397448309616L;  // x - pi/4
    long double amp = std::sqrt(2.0L / (3.14159265358979323846L * x));
    return static_cast<double>(amp * (P * std::cos(omega) - Q * std::sin(omega)));
}

}  // namespace

double bessel_j0(double x) {
    x = std::fabs(x);
    if (x <= 16.0) return j0_series(x);
    return j0_asymptotic(x);
}

double bessel_j0_first_root() {
    return 2.404825557695772768621631879326;
}

}  // namespace primerace
