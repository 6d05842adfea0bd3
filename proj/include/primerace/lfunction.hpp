#pragma once

#include <complex>

#include "primerace/characters.hpp"

namespace primerace {

// Hurwitz zeta zeta(s, x) for 0 < x <= 1, Re s = 1/2, by Euler-Maclaurin.
// Accurate to ~1e-13 relative for |Im s| up to a few thousand.
std::complex<double> hurwitz_zeta(std::complex<double> s, double x);

// L(s, chi) through the Hurwitz decomposition q^-s sum_a chi(a) zeta(s,a/q).
std::complex<double> dirichlet_l(const Character& chi, std::complex<double> s);

// Real-valued rotation of the completed L-function on the critical line:
// Z(t) = Re[ e^{-i arg(eps)/2} (q/pi)^{(1/2+a+it)/2} Gamma((1/2+a+it)/2) L(1/2+it) ],
// rescaled by e^{pi t/4} so it does not underflow; its sign changes on t > 0
// are exactly the ordinates of the zeros on the line.  For a principal
// character this evaluates the corresponding zeta-function object (q = 1).
class HardyZ {
public:
    explicit HardyZ(const Character& chi);
    double operator()(double t) const;
    std::int64_t conductor_q() const { return q_; }

private:
    Character chi_;
    std::int64_t q_;
    int parity_a_;
    double eps_phase_half_;  // arg(root number)/2
    bool zeta_mode_;
};

// log Gamma for complex argument (Lanczos), |error| ~ 1e-13
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace primerace
