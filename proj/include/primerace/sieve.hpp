#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace primerace {

struct SieveConfig {
    std::uint64_t limit = 0;   // inclusive sieving bound, <= 1e9
    std::int64_t q = 1;        // modulus for the per-residue tallies
    double dt = 1e-3;          // checkpoint spacing on the t = log x grid
};

// Exact prime-counting state: pi/theta/psi cumulative counters, per reduced
// residue class mod q, snapshotted on a log-spaced checkpoint grid.  Exact
// values at arbitrary x <= limit are recovered by re-sieving the short gap
// from the nearest checkpoint below (about x*dt integers).
class PrimeCounts {
public:
    struct Counters {
        std::uint64_t pi = 0;
        double theta = 0.0, psi = 0.0;
        std::vector<std::uint64_t> pi_r;
        std::vector<double> theta_r, psi_r;
    };

    static PrimeCounts build(const SieveConfig& cfg);
    // loads from cache when present (same q, dt, and limit_cached >= limit);
    // resumes an existing cache with smaller limit; writes the cache back
    static PrimeCounts load_or_build(const SieveConfig& cfg, const std::string& cache_dir);

    std::uint64_t limit() const { return cfg_.limit; }
    std::int64_t q() const { return cfg_.q; }
    double dt() const { return cfg_.dt; }

    const std::vector<std::int64_t>& residues() const { return residues_; }
    std::size_t residue_slot(std::int64_t a) const;

    std::size_t checkpoints() const { return xs_.size(); }
    double t_of(std::size_t j) const;
    std::uint64_t x_of(std::size_t j) const { return xs_[j]; }
    Counters at_checkpoint(std::size_t j) const;

    // exact counters at x, 1 <= x <= limit
    Counters at(std::uint64_t x) const;

    void save(const std::string& cache_dir) const;

private:
    PrimeCounts() = default;
    static PrimeCounts extend(const PrimeCounts& prior, std::uint64_t new_limit);

    SieveConfig cfg_;
    std::int64_t j0_ = 0;  // checkpoint j covers t = (j0+j)*dt
    std::vector<std::int64_t> residues_;
    std::vector<std::uint64_t> xs_;  // checkpoint x values (ascending, may repeat)
    // checkpoint arrays, one row per checkpoint
    std::vector<std::uint64_t> pi_;
    std::vector<double> theta_, psi_;
    std::vector<std::uint64_t> pi_r_;   // row-major [checkpoint][slot]
    std::vector<double> theta_r_, psi_r_;
    std::vector<std::uint32_t> base_primes_;  // primes up to sqrt(limit)

    friend class SieveBuilder;
};

}  // namespace primerace
