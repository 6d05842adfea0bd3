#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primerace/characters.hpp"
#include "primerace/geometry.hpp"
#include "primerace/relations.hpp"
#include "primerace/zeros.hpp"

namespace primerace {

// Characteristic function e^{i t.b} prod_gamma J0(2|t.v_gamma|/sqrt(1/4+gamma^2)).
struct CharFnSpec {
    struct Term {
        std::vector<std::complex<double>> v;  // length r
        double gamma = 0.0;
    };
    std::vector<Term> terms;
    std::vector<double> shift;  // b; empty means zero

    std::size_t r() const { return terms.empty() ? shift.size() : terms[0].v.size(); }
};

std::complex<double> charfn_eval(const CharFnSpec& spec, const std::vector<double>& t);

// Which zeros feed a sampler / characteristic function.
enum class ZeroSelection { all, self_sufficient_of_k_sturdy, self_sufficient_of_w_robust, zeta_only };

enum class SamplerMode { li_model, closure_model };

struct SamplerModel {
    SamplerMode mode = SamplerMode::li_model;
    ZeroSelection selection = ZeroSelection::all;
    double T = 0.0;              // truncation height
    std::size_t sturdy_k = 1;    // for self_sufficient_of_k_sturdy
    double robust_w = 0.0;       // for self_sufficient_of_w_robust
    bool include_shift = false;  // add b to every sample
};

// Equal-weight point cloud in R^r with provenance.
struct EmpiricalMeasure {
    std::size_t r = 0;
    std::vector<double> points;  // row-major n x r
    std::uint64_t seed = 0;
    std::string model;

    std::size_t n() const { return r == 0 ? 0 : points.size() / r; }
    const double* row(std::size_t i) const { return points.data() + i * r; }

    std::vector<double> mean() const;
    double sigma() const;  // sqrt(E||x||^2 - ||E x||^2)
    double region_mass(const RegionSpec& region) const;
    std::complex<double> empirical_charfn(const std::vector<double>& t) const;
};

// The ordinates (and their character vectors) that a model selects.
struct SelectedZeros {
    std::vector<std::size_t> char_index;  // rows into RaceVectors
    std::vector<double> gamma;
    std::vector<PreciseReal> precise;
};

SelectedZeros select_zeros(const SamplerModel& model, const RaceVectors& vectors,
                           const ZeroTable& table, const SufficiencyReport* report);

// n samples of b? + 2 Re sum_chi conj(v_chi) sum_gamma Z_gamma/sqrt(1/4+gamma^2).
// li_model draws Z_gamma independently uniform on the circle; closure_model
// draws the phase vector from the Kronecker-Weyl closure of the selected
// ordinates (relations detected at (H, p) = (100, as available)).
EmpiricalMeasure sample(const SamplerModel& model, const RaceVectors& vectors,
                        const ZeroTable& table, const SufficiencyReport* report,
                        std::size_t n, std::uint64_t seed,
                        const SubtorusSpec* closure = nullptr);

// n samples of x1 + x2 with independent bootstrap draws from m1 and m2.
EmpiricalMeasure convolve(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2,
                          std::size_t n, std::uint64_t seed);

struct TimeAverage {
    double estimate = 0.0;
    double y_used = 0.0;
    std::size_t points = 0;
};

// Fraction of grid points with series value inside the region; series rows
// are E_T(e^t) on a uniform t-grid.
TimeAverage time_average_density(const std::vector<std::vector<double>>& series,
                                 double t0, double dt, const RegionSpec& region);

// mu((a,b]) for a 1-D spec by Fourier inversion with cutoff growth until the
// change is below 1e-6; DataError if no convergence by c = 1e6.
double fourier_interval_prob(const CharFnSpec& spec, double a, double b,
                             double initial_cutoff = 64.0);

// P(X > x0) for the 1-D spec: interval probabilities with the upper end
// pushed out until the tail contributes below 1e-6.
double fourier_prob_above(const CharFnSpec& spec, double x0);

struct DensityReport {
    std::string race;           // "q;a,b"
    std::string estimator;      // mc | fourier | time_avg
    double estimate = 0.0;
    double error = 0.0;         // standard error / resolution
    double T = 0.0;
    std::size_t n_samples = 0;
    double Y = 0.0;
    std::string zero_source;
    std::int64_t H = 0;
    int p = 0;
    std::uint64_t seed = 0;
    std::string to_json() const;
};

enum class TwoWayEstimator { mc, fourier, time_avg };

// delta(q; a, b): logarithmic density of {pi(x;q,a) > pi(x;q,b)} under the
// limiting distribution built from the table's zeros (selection per model);
// the bias shift c(q,b) - c(q,a) plus central-zero terms enters through the
// b-vector difference.
DensityReport two_way_density(std::int64_t q, std::int64_t a, std::int64_t b,
                              const ZeroTable& table, const SufficiencyReport* report,
                              const SamplerModel& model, TwoWayEstimator estimator,
                              std::size_t n_samples, std::uint64_t seed,
                              double time_avg_Y = 5000.0, double time_avg_dt = 0.01);

struct TailReport {
    std::vector<double> lambdas;
    std::vector<double> masses;       // P(||x - mean|| >= lambda sigma)
    std::vector<double> chebyshev;    // 1/lambda^2
    bool chebyshev_ok = false;
    double fit_c1 = 0.0, fit_c2 = 0.0;  // tail(V) ~ c1 exp(-c2 sqrt(V))
    double fit_points = 0;
};

TailReport tail_diagnostics(const EmpiricalMeasure& m,
                            const std::vector<double>& lambdas = {2.0, 4.0, 8.0});

// Density of the spec's measure on an l-dimensional subspace (l <= 2) by
// Fourier inversion in orthonormal coordinates.  Refuses when the J0-product
// envelope decays too slowly to integrate (needs more than 2l effective
// zeros); the single-zero 1-D case returns the exact arcsine density.
struct SubspaceDensity {
    std::vector<std::vector<double>> grid_points;  // in subspace coordinates
    std::vector<double> density;
    double mass = 0.0;  // quadrature of the density over the grid
};

SubspaceDensity subspace_density(const CharFnSpec& spec, const SubspaceSpec& subspace,
                                 const std::vector<std::vector<double>>& grid);

// d log10 of the envelope decay exponent gate: #effective zeros must exceed
// 2*l for the inversion integral to converge.
std::size_t effective_zero_count(const CharFnSpec& spec, const SubspaceSpec& subspace);

}  // namespace primerace
