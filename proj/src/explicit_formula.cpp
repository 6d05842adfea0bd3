#include "primerace/explicit_formula.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include "primerace/errors.hpp"
#include "primerace/parallel.hpp"
#include "primerace/quadrature.hpp"

namespace primerace {
namespace {

double weight_prefactor(double x, Weighting w) {
    return w == Weighting::pi ? std::log(x) / std::sqrt(x) : 1.0 / std::sqrt(x);
}

// zeros of every nonprincipal character mod q up to T, with the character's
// row index into RaceVectors
struct ZeroSet {
    std::vector<std::size_t> char_index;   // per zero
    std::vector<double> gamma;             // per zero
};

ZeroSet collect_zeros(const RaceVectors& rv, const ZeroTable& table, double T) {
    ZeroSet zs;
    for (std::size_t c = 0; c < rv.characters.size(); ++c) {
        const Character& chi = rv.characters[c];
        if (chi.is_principal()) continue;
        const CharacterZeros& cz = table.of(chi.modulus(), chi.label());
        if (cz.height_complete + 1e-12 < T)
            throw DataError("zero table incomplete to T=" + std::to_string(T) + " for " +
                            cz.conrey());
        for (const ZeroRecord& r : cz.records) {
            if (r.ordinate > T) break;
            zs.char_index.push_back(c);
            zs.gamma.push_back(r.ordinate);
        }
    }
    return zs;
}

}  // namespace

ErrorVector error_vector(const PrimeCounts& counts, const RaceSpec& spec, double x,
                         Weighting w) {
    if (x < 2.0) throw std::invalid_argument("error_vector: x must be >= 2");
    if (x > static_cast<double>(counts.limit())) throw EnvelopeError("error_vector: x beyond sieve");
    if (spec.q != counts.q()) throw std::invalid_argument("error_vector: modulus mismatch");
    PrimeCounts::Counters c = counts.at(static_cast<std::uint64_t>(std::floor(x)));
    double phi = static_cast<double>(euler_phi(spec.q));
    double pre = weight_prefactor(x, w);
    ErrorVector ev;
    ev.x = x;
    ev.weighting = w;
    for (std::int64_t a : spec.residues) {
        std::size_t slot = counts.residue_slot(a);
        double val = 0.0;
        switch (w) {
            case Weighting::pi:
                val = phi * static_cast<double>(c.pi_r[slot]) - static_cast<double>(c.pi);
                break;
            case Weighting::theta:
                val = phi * c.theta_r[slot] - c.theta;
                break;
            case Weighting::psi:
                val = phi * c.psi_r[slot] - c.psi;
                break;
        }
        ev.values.push_back(pre * val);
    }
    return ev;
}

ErrorVector truncated_error_vector(const RaceVectors& rv, const ZeroTable& table, double x,
                                   double T) {
    if (x < 1.0) throw std::invalid_argument("truncated_error_vector: x must be >= 1");
    ZeroSet zs = collect_zeros(rv, table, T);
    const std::size_t r = rv.r();
    ErrorVector ev;
    ev.x = x;
    ev.values = rv.b;
    double t = std::log(x);
    for (std::size_t z = 0; z < zs.gamma.size(); ++z) {
        double g = zs.gamma[z];
        double s = std::sqrt(0.25 + g * g);
        double phase = g * t - theta_gamma(g);
        double cre = std::cos(phase), cim = std::sin(phase);
        const auto& v = rv.v[zs.char_index[z]];
        for (std::size_t j = 0; j < r; ++j) {
            // 2 Re( conj(v_j) e^{i phase} ) / s
            ev.values[j] += 2.0 * (v[j].real() * cre + v[j].imag() * cim) / s;
        }
    }
    return ev;
}

std::vector<std::vector<double>> truncated_series(const RaceVectors& rv, const ZeroTable& table,
                                                  const SeriesGrid& grid, double T) {
    ZeroSet zs = collect_zeros(rv, table, T);
    const std::size_t r = rv.r();
    const std::size_t nz = zs.gamma.size();
    std::vector<std::vector<double>> out(grid.n, rv.b);

    // precomputed per-zero row weights a_c, b_c with contribution
    // a_c cos(phase) + b_c sin(phase)
    std::vector<double> wa(nz * r), wb(nz * r);
    for (std::size_t z = 0; z < nz; ++z) {
        double s = std::sqrt(0.25 + zs.gamma[z] * zs.gamma[z]);
        const auto& v = rv.v[zs.char_index[z]];
        for (std::size_t j = 0; j < r; ++j) {
            wa[z * r + j] = 2.0 * v[j].real() / s;
            wb[z * r + j] = 2.0 * v[j].imag() / s;
        }
    }

    const std::size_t chunk = 4096;
    const std::size_t nchunks = (grid.n + chunk - 1) / chunk;
    parallel_chunks(nchunks, [&](std::size_t ci) {
        std::size_t begin = ci * chunk, end = std::min(grid.n, begin + chunk);
        for (std::size_t z = 0; z < nz; ++z) {
            double g = zs.gamma[z];
            double t0 = grid.t0 + grid.dt * static_cast<double>(begin);
            double ph0 = g * t0 - theta_gamma(g);
            double c = std::cos(ph0), s = std::sin(ph0);
            double dc = std::cos(g * grid.dt), ds = std::sin(g * grid.dt);
            const double* wza = &wa[z * r];
            const double* wzb = &wb[z * r];
            for (std::size_t i = begin; i < end; ++i) {
                double* row = out[i].data();
                for (std::size_t j = 0; j < r; ++j) row[j] += wza[j] * c + wzb[j] * s;
                double cn = c * dc - s * ds;
                s = c * ds + s * dc;
                c = cn;
            }
        }
    });
    return out;
}

TruncationGap truncation_gap(const PrimeCounts& counts, const RaceVectors& rv,
                             const ZeroTable& table, double t_lo, double t_hi, double T,
                             Weighting w) {
    TruncationGap out;
    double sumsq = 0.0;
    double logT = std::log(T);
    for (std::size_t j = 0; j < counts.checkpoints(); ++j) {
        double t = counts.t_of(j);
        if (t < t_lo || t > t_hi) continue;
        double x = static_cast<double>(counts.x_of(j));
        if (x < 2.0) continue;
        ErrorVector e = error_vector(counts, rv.spec, x, w);
        ErrorVector et = truncated_error_vector(rv, table, x, T);
        double norm2 = 0.0;
        for (std::size_t c = 0; c < e.values.size(); ++c) {
            double d = e.values[c] - et.values[c];
            norm2 += d * d;
        }
        double gap = std::sqrt(norm2);
        double bound = std::sqrt(x) / T * logT * logT + 1.0 / std::log(x);
        out.sup_gap = std::max(out.sup_gap, gap);
        out.bound_ratio = std::max(out.bound_ratio, gap / bound);
        sumsq += norm2;
        ++out.points;
    }
    if (out.points == 0) throw std::invalid_argument("truncation_gap: empty grid window");
    out.rms_gap = std::sqrt(sumsq / static_cast<double>(out.points));
    return out;
}

double pi_li_error(const PrimeCounts& counts, double x) {
    if (x < 2.0) throw std::invalid_argument("pi_li_error: x must be >= 2");
    PrimeCounts::Counters c = counts.at(static_cast<std::uint64_t>(std::floor(x)));
    return std::log(x) / std::sqrt(x) * (static_cast<double>(c.pi) - log_integral(x));
}

double ap_vs_total_error(const PrimeCounts& counts, std::int64_t q, std::int64_t a, double x,
                         APMode mode) {
    if (x < 2.0) throw std::invalid_argument("ap_vs_total_error: x must be >= 2");
    if (q != counts.q()) throw std::invalid_argument("ap_vs_total_error: modulus mismatch");
    PrimeCounts::Counters c = counts.at(static_cast<std::uint64_t>(std::floor(x)));
    double phi = static_cast<double>(euler_phi(q));
    double pia = static_cast<double>(c.pi_r[counts.residue_slot(a)]);
    double other = mode == APMode::li_over_phi ? log_integral(x) : static_cast<double>(c.pi);
    return std::log(x) / std::sqrt(x) * (pia - other / phi);
}

void write_series_csv(const std::string& path, const SeriesGrid& grid,
                      const std::vector<std::vector<double>>& series) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write CSV: " + path);
    out << "t";
    if (!series.empty())
        for (std::size_t j = 0; j < series[0].size(); ++j) out << ",E" << j + 1;
    out << "\n";
    char buf[32];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g", grid.t0 + grid.dt * static_cast<double>(i));
        out << buf;
        for (double v : series[i]) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out << buf;
        }
        out << "\n";
    }
}

}  // namespace primerace
