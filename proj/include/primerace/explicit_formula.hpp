#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primerace/characters.hpp"
#include "primerace/sieve.hpp"
#include "primerace/zeros.hpp"

namespace primerace {

enum class Weighting { pi, theta, psi };

struct ErrorVector {
    double x = 0.0;
    std::vector<double> values;
    Weighting weighting = Weighting::pi;
};

// Normalized error vector at x from exact sieve counts:
//   pi    : (log x/sqrt x) (phi(q) pi(x;q,a_j) - pi(x))
//   theta : (1/sqrt x)     (phi(q) theta(x;q,a_j) - theta(x))
//   psi   : (1/sqrt x)     (phi(q) psi(x;q,a_j) - psi(x))
ErrorVector error_vector(const PrimeCounts& counts, const RaceSpec& spec, double x,
                         Weighting w = Weighting::pi);

// Truncated explicit-formula vector
//   E_T(x) = b + 2 Re sum_{chi != chi0} conj(v_chi)
//                sum_{0 < gamma <= T} e^{-i theta_gamma} x^{i gamma}/sqrt(1/4+gamma^2),
// central zeros folded into b.  Requires the table complete to T for every
// nonprincipal character mod q.
ErrorVector truncated_error_vector(const RaceVectors& vectors, const ZeroTable& table,
                                   double x, double T);

// Uniform grid in t = log x.
struct SeriesGrid {
    double t0 = 0.0;
    double dt = 1e-3;
    std::size_t n = 0;
};

// E_T(e^t) over the grid; per-zero phase rotors, evaluated in fixed chunks
// so results do not depend on the thread count.
std::vector<std::vector<double>> truncated_series(const RaceVectors& vectors,
                                                  const ZeroTable& table,
                                                  const SeriesGrid& grid, double T);

struct TruncationGap {
    double sup_gap = 0.0;
    double rms_gap = 0.0;
    double bound_ratio = 0.0;  // sup of gap/(sqrt(x)/T log^2 T + 1/log x)
    std::size_t points = 0;
};

// || E(x) - E_T(x) || over the sieve checkpoints with t in [t_lo, t_hi].
TruncationGap truncation_gap(const PrimeCounts& counts, const RaceVectors& vectors,
                             const ZeroTable& table, double t_lo, double t_hi, double T,
                             Weighting w = Weighting::pi);

// (log x/sqrt x)(pi(x) - li(x)); li integrates from 2, so li(2) = 0.
double pi_li_error(const PrimeCounts& counts, double x);

enum class APMode { li_over_phi, pi_over_phi };

// (log x/sqrt x)(pi(x;q,a) - li(x)/phi(q))  or  (log x/sqrt x)(pi(x;q,a) - pi(x)/phi(q))
double ap_vs_total_error(const PrimeCounts& counts, std::int64_t q, std::int64_t a,
                         double x, APMode mode);

// CSV export of (t, E_T(e^t) components) rows.
void write_series_csv(const std::string& path, const SeriesGrid& grid,
                      const std::vector<std::vector<double>>& series);

}  // namespace primerace
