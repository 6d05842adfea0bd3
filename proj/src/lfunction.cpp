#include "primerace/lfunction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "primerace/errors.hpp"

namespace primerace {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// B_{2k}/(2k)!: exact rationals up to k = 12, then the Euler identity
// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k)/(2pi)^{2k} with zeta(2k) ~ 1 + 2^-2k + 3^-2k
// (relative error < 4^-2k, negligible at that range).
const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        const double num[13] = {0, 1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513, -236364091};
        const double den[13] = {1, 6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730};
        std::vector<double> t(40, 0.0);
        double fact = 1.0;
        for (int m = 1; m <= 24; ++m) {
            fact *= m;
            if (m % 2 == 0 && m / 2 <= 12) t[static_cast<std::size_t>(m / 2)] = num[m / 2] / den[m / 2] / fact;
        }
        for (int k = 13; k < 40; ++k) {
            double z = 1.0 + std::pow(2.0, -2.0 * k) + std::pow(3.0, -2.0 * k);
            double p = std::pow(2.0 * kPi, 2.0 * k);
            t[static_cast<std::size_t>(k)] = (k % 2 == 1 ? 2.0 : -2.0) * z / p;
        }
        return t;
    }();
    return table;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos, g = 7
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi/sin(pi z)) - log Gamma(1-z)
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> a = c[0];
    std::complex<double> t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (z + static_cast<double>(i));
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

std::complex<double> hurwitz_zeta(std::complex<double> s, double x) {
    if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("hurwitz_zeta: need 0 < x <= 1");
    double t = std::fabs(s.imag());
    int N = 32 + static_cast<int>(std::ceil(0.6 * t));
    const int K = 22;

    std::complex<double> sum = 0.0;
    for (int n = 0; n < N; ++n) {
        double base = n + x;
        // (n+x)^{-s} = exp(-s log(n+x))
        sum += std::exp(-s * std::log(base));
    }
    double nx = N + x;
    std::complex<double> lognx = std::log(std::complex<double>(nx, 0.0));
    std::complex<double> tail = std::exp((1.0 - s) * lognx) / (s - 1.0);
    std::complex<double> pw = std::exp(-s * lognx);  // (N+x)^{-s}
    tail += 0.5 * pw;

    // Euler-Maclaurin correction: sum_k B_{2k}/(2k)! (s)_{2k-1} (N+x)^{-s-2k+1}
    const std::vector<double>& bf = bernoulli_over_factorial();
    std::complex<double> rising = s;   // (s)_{2k-1}
    std::complex<double> pk = pw / nx; // (N+x)^{-s-2k+1}
    for (int k = 1; k <= K; ++k) {
        std::complex<double> term = bf[static_cast<std::size_t>(k)] * rising * pk;
        tail += term;
        if (std::abs(term) < 1e-19 * (1.0 + std::abs(sum))) break;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        pk /= nx * nx;
    }
    return sum + tail;
}

std::complex<double> dirichlet_l(const Character& chi, std::complex<double> s) {
    std::int64_t q = chi.modulus();
    if (q == 1 || chi.is_principal()) {
        if (chi.is_principal() && q > 1)
            throw std::invalid_argument("dirichlet_l: evaluate principal characters via the q=1 zeta object");
        return hurwitz_zeta(s, 1.0);
    }
    std::complex<double> total = 0.0;
    for (std::int64_t a = 1; a < q; ++a) {
        if (chi.vanishes_at(a)) continue;
        total += chi.value(a) * hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * total;
}

HardyZ::HardyZ(const Character& chi)
    : chi_(chi.is_principal() ? character(1, 1) : chi),
      q_(chi_.modulus()),
      parity_a_(0),
      eps_phase_half_(0.0),
      zeta_mode_(chi_.modulus() == 1) {
    if (!zeta_mode_) {
        if (chi_.conductor() != q_)
            throw EnvelopeError("HardyZ: character must be primitive (or principal)");
        parity_a_ = chi_.parity() == 1 ? 0 : 1;
        // root number from the Gauss sum: eps = tau(chi) / (i^a sqrt(q))
        std::complex<double> tau = 0.0;
        for (std::int64_t m = 1; m <= q_; ++m) {
            if (chi_.vanishes_at(m)) continue;
            double th = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(q_);
            tau += chi_.value(m) * std::complex<double>(std::cos(th), std::sin(th));
        }
        double root_q = std::sqrt(static_cast<double>(q_));
        if (std::fabs(std::abs(tau) - root_q) > 1e-8 * root_q)
            throw std::logic_error("HardyZ: |tau| != sqrt(q), character not primitive?");
        std::complex<double> i_pow_a = parity_a_ == 0 ? std::complex<double>(1, 0)
                                                      : std::complex<double>(0, 1);
        std::complex<double> eps = tau / (i_pow_a * root_q);
        eps_phase_half_ = 0.5 * std::arg(eps);
    }
}

double HardyZ::operator()(double t) const {
    std::complex<double> s(0.5, t);
    std::complex<double> L = zeta_mode_ ? hurwitz_zeta(s, 1.0) : dirichlet_l(chi_, s);
    std::complex<double> half_arg = (s + static_cast<double>(parity_a_)) * 0.5;
    double phase = log_gamma(half_arg).imag() +
                   0.5 * t * std::log(static_cast<double>(q_) / kPi) - eps_phase_half_;
    std::complex<double> rot(std::cos(phase), std::sin(phase));
    return (rot * L).real();
}

}  // namespace primerace
